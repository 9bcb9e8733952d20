#include "adelic/curve.hpp"

#include <cctype>
#include <sstream>

#include "adelic/linalg.hpp"

namespace adelic {

std::string CurveDivisor::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : coeffs) {
    if (!first) os << (m >= 0 ? " + " : " - ");
    if (first && m < 0) os << "-";
    long a = m < 0 ? -m : m;
    os << a << "[" << p.str() << "]";
    first = false;
  }
  return os.str();
}

long rel_dim(const CurveLattice& a, const CurveLattice& b) {
  long s = 0;
  for (const auto& [p, m] : b.bound.coeffs) s += m;
  for (const auto& [p, m] : a.bound.coeffs) s -= m;
  return s;
}

namespace {

// Laurent expansion of a pole/monomial basis function at a point.
//
// Candidates are the constant 1, (x-p)^-l for finite p, and x^l. The point of
// expansion is either finite q (local parameter s = x-q) or infinity (local
// parameter 1/x). Returns coefficients of orders [from..to].
std::vector<Scalar> expand_candidate(const FieldSpec& f, int kind, const Scalar& p, long l,
                                     const CurvePoint& q, long from, long to) {
  const std::string var = "s";
  long rel = to - std::min(from, -l) + 2;
  LaurentSeries1 s = LaurentSeries1::zero(f, var);
  if (kind == 0) {  // constant 1
    s = LaurentSeries1::constant(f, var, Scalar::one(f));
  } else if (kind == 1) {  // (x - p)^-l
    if (!q.inf) {
      if (q.value == p) {
        s = LaurentSeries1::monomial(f, var, -l, Scalar::one(f));
      } else {
        // ((q-p) + s)^-l
        LaurentSeries1 base = LaurentSeries1::constant(f, var, q.value - p) +
                              LaurentSeries1::monomial(f, var, 1, Scalar::one(f));
        s = base.pow(-l, rel);
      }
    } else {
      // in w = 1/x: w^l (1 - p w)^-l
      LaurentSeries1 base = LaurentSeries1::constant(f, var, Scalar::one(f)) +
                            LaurentSeries1::monomial(f, var, 1, -p);
      s = base.pow(-l, rel).shifted(l);
    }
  } else {  // x^l
    if (!q.inf) {
      LaurentSeries1 base = LaurentSeries1::constant(f, var, q.value) +
                            LaurentSeries1::monomial(f, var, 1, Scalar::one(f));
      s = base.pow(l, rel);
    } else {
      s = LaurentSeries1::monomial(f, var, -l, Scalar::one(f));
    }
  }
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (long o = from; o <= to; ++o) out.push_back(s.known(o) ? s.coeff(o) : Scalar::zero(f));
  return out;
}

struct Candidate {
  int kind;  // 0: constant, 1: (x-p)^-l, 2: x^l
  Scalar p;
  long l;
};

std::vector<Candidate> pole_basis(const FieldSpec& f, const CurveDivisor& d, long cap_at) {
  std::vector<Candidate> cands;
  cands.push_back({0, Scalar::zero(f), 0});
  for (const auto& [pt, e] : d.coeffs) {
    long bound = std::min(e, cap_at);
    if (bound <= 0) continue;
    if (!pt.inf)
      for (long l = 1; l <= bound; ++l) cands.push_back({1, pt.value, l});
    else
      for (long l = 1; l <= bound; ++l) cands.push_back({2, Scalar::zero(f), l});
  }
  return cands;
}

}  // namespace

CurveCohomology curve_cohomology(const FieldSpec& f, const CurveDivisor& d) {
  // h0: span of pole candidates cut by vanishing conditions at negative points
  std::vector<Candidate> cands = pole_basis(f, d, Window::kInf);
  std::vector<std::pair<CurvePoint, long>> conditions;  // (point, order)
  for (const auto& [pt, e] : d.coeffs)
    if (e < 0)
      for (long o = 0; o < -e; ++o) conditions.push_back({pt, o});

  long h0;
  if (conditions.empty()) {
    h0 = static_cast<long>(cands.size());
  } else {
    Matrix m(f, conditions.size(), cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c) {
      for (std::size_t r = 0; r < conditions.size(); ++r) {
        auto coeffs = expand_candidate(f, cands[c].kind, cands[c].p, cands[c].l, conditions[r].first,
                                       conditions[r].second, conditions[r].second);
        m.at(r, c) = coeffs[0];
      }
    }
    h0 = static_cast<long>(cands.size() - m.rank());
  }

  // h1: tails at supp(d) and infinity modulo tails of rational functions
  long M = 2;
  for (const auto& [pt, e] : d.coeffs) M += e < 0 ? -e : e;
  CurveDivisor big;
  for (const auto& [pt, e] : d.coeffs) big.add(pt, M);
  big.add(CurvePoint::infinity(f), M - big.at(CurvePoint::infinity(f)));

  std::vector<std::pair<CurvePoint, long>> tails;  // (point, order of the class coordinate)
  for (const auto& [pt, e] : big.coeffs) {
    long ep = d.at(pt);
    for (long o = -M; o <= -ep - 1; ++o) tails.push_back({pt, o});
  }
  std::vector<Candidate> rats = pole_basis(f, big, M);
  Matrix m(f, rats.size(), tails.size());
  for (std::size_t r = 0; r < rats.size(); ++r)
    for (std::size_t c = 0; c < tails.size(); ++c) {
      auto coeffs = expand_candidate(f, rats[r].kind, rats[r].p, rats[r].l, tails[c].first,
                                     tails[c].second, tails[c].second);
      m.at(r, c) = coeffs[0];
    }
  long h1 = static_cast<long>(tails.size()) - static_cast<long>(m.rank());
  return {h0, h1};
}

CurveCohomology curve_cohomology_closed_form(const CurveDivisor& d) {
  long deg = d.degree();
  return {std::max(deg + 1, 0L), std::max(-deg - 1, 0L)};
}

CurveRRReport abstract_rr_check(const FieldSpec& f, const CurveDivisor& d1, const CurveDivisor& d2) {
  CurveCohomology c1 = curve_cohomology(f, d1);
  CurveCohomology c2 = curve_cohomology(f, d2);
  long chi1 = c1.h0 - c1.h1;
  long chi2 = c2.h0 - c2.h1;
  long rd = rel_dim(CurveLattice{d2}, CurveLattice{d1});
  return {chi1, chi2, rd, chi1 - chi2 == rd};
}

long idele_degree(const FieldSpec& f, const CurveIdele& a, const CurveDivisor& monomial_part) {
  long deg = 0;
  for (const auto& [p, m] : monomial_part.coeffs) deg += m;
  for (const auto& [p, s] : a.local_units) deg += s.valuation();
  (void)f;
  return deg;
}

CurveDivisor parse_curve_divisor(const std::string& text, const FieldSpec& f) {
  CurveDivisor d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool any = false;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw ParseError("expected + or - between terms", i);
    }
    if (i < text.size() && text[i] == '0' && (i + 1 >= text.size() || text[i + 1] != '[')) {
      ++i;
      any = true;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    long mult = i > start ? std::stol(text.substr(start, i - start)) : 1;
    skip();
    if (i >= text.size() || text[i] != '[') throw ParseError("expected [point]", i);
    ++i;
    std::size_t close = text.find(']', i);
    if (close == std::string::npos) throw ParseError("missing ]", i);
    std::string label = text.substr(i, close - i);
    i = close + 1;
    CurvePoint pt = CurvePoint::infinity(f);
    if (label != "inf") {
      std::size_t slash = label.find('/');
      if (slash == std::string::npos)
        pt = CurvePoint::at(Scalar::from_int(f, std::stoll(label)));
      else
        pt = CurvePoint::at(Scalar::from_fraction(f, std::stoll(label.substr(0, slash)),
                                                  std::stoll(label.substr(slash + 1))));
    }
    d.add(pt, sign * mult);
    any = true;
  }
  if (!any) throw ParseError("empty divisor", 0);
  return d;
}

}  // namespace adelic
