#include "adelic/bivariate.hpp"

#include <sstream>

namespace adelic {

BivarPoly BivarPoly::constant(const FieldSpec& f, const Scalar& c) { return monomial(f, 0, 0, c); }

BivarPoly BivarPoly::monomial(const FieldSpec& f, long i, long j, const Scalar& c) {
  BivarPoly p(f);
  p.add_term(i, j, c);
  return p;
}

void BivarPoly::add_term(long i, long j, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(i, j);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.insert({key, c});
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly r(field_);
  for (const auto& [k, c] : terms_) r.terms_.insert({k, -c});
  return r;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  BivarPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + (-o); }

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  BivarPoly r(field_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

BivarPoly BivarPoly::pow(long e) const {
  if (e < 0) throw Error("BivarPoly::pow expects a nonnegative exponent");
  BivarPoly acc = constant(field_, Scalar::one(field_));
  BivarPoly base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

BivarPoly BivarPoly::scaled(const Scalar& c) const {
  BivarPoly r(field_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.insert({k, v * c});
  return r;
}

BivarPoly BivarPoly::dx() const {
  BivarPoly r(field_);
  for (const auto& [k, c] : terms_) r.add_term(k.first - 1, k.second, c * Scalar::from_int(field_, k.first));
  return r;
}

BivarPoly BivarPoly::dy() const {
  BivarPoly r(field_);
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second - 1, c * Scalar::from_int(field_, k.second));
  return r;
}

Scalar BivarPoly::eval_point(const Scalar& a, const Scalar& b) const {
  Scalar acc = Scalar::zero(field_);
  for (const auto& [k, c] : terms_) acc = acc + c * a.pow(k.first) * b.pow(k.second);
  return acc;
}

IterLaurent BivarPoly::eval(const IterLaurent& x, const IterLaurent& y, long t_rel, long u_rel) const {
  IterLaurent acc = IterLaurent::zero(field_, x.inner_var(), x.outer_var());
  for (const auto& [k, c] : terms_) {
    IterLaurent term = x.pow(k.first, t_rel, u_rel) * y.pow(k.second, t_rel, u_rel);
    acc = acc + term.scaled(c);
  }
  return acc;
}

LaurentSeries1 BivarPoly::eval1(const LaurentSeries1& x, const LaurentSeries1& y, long rel) const {
  LaurentSeries1 acc = LaurentSeries1::zero(field_, x.var());
  for (const auto& [k, c] : terms_) {
    LaurentSeries1 term = x.pow(k.first, rel) * y.pow(k.second, rel);
    acc = acc + term.scaled(c);
  }
  return acc;
}

long BivarPoly::min_deg_x() const {
  long m = Window::kInf;
  for (const auto& [k, c] : terms_) m = std::min(m, k.first);
  return m;
}

long BivarPoly::min_deg_y() const {
  long m = Window::kInf;
  for (const auto& [k, c] : terms_) m = std::min(m, k.second);
  return m;
}

long BivarPoly::max_deg_x() const {
  long m = -Window::kInf;
  for (const auto& [k, c] : terms_) m = std::max(m, k.first);
  return m;
}

long BivarPoly::max_deg_y() const {
  long m = -Window::kInf;
  for (const auto& [k, c] : terms_) m = std::max(m, k.second);
  return m;
}

long BivarPoly::total_degree() const {
  long m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.first + k.second);
  return m;
}

std::string BivarPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    os << c.str();
    if (k.first) os << "*x^" << k.first;
    if (k.second) os << "*y^" << k.second;
    first = false;
  }
  return os.str();
}

BivarRational BivarRational::of(const BivarPoly& p) {
  return BivarRational{p, BivarPoly::constant(p.field(), Scalar::one(p.field()))};
}

BivarRational BivarRational::operator+(const BivarRational& o) const {
  return BivarRational{num * o.den + o.num * den, den * o.den};
}

BivarRational BivarRational::operator-(const BivarRational& o) const {
  return BivarRational{num * o.den - o.num * den, den * o.den};
}

BivarRational BivarRational::operator*(const BivarRational& o) const {
  return BivarRational{num * o.num, den * o.den};
}

BivarRational BivarRational::operator/(const BivarRational& o) const {
  if (o.num.is_zero()) throw ZeroDenominator("division by the zero rational function");
  return BivarRational{num * o.den, den * o.num};
}

BivarRational BivarRational::pow(long e) const {
  if (e >= 0) return BivarRational{num.pow(e), den.pow(e)};
  if (num.is_zero()) throw ZeroDenominator("negative power of zero");
  return BivarRational{den.pow(-e), num.pow(-e)};
}

BivarRational BivarRational::dx() const {
  return BivarRational{num.dx() * den - num * den.dx(), den * den};
}

BivarRational BivarRational::dy() const {
  return BivarRational{num.dy() * den - num * den.dy(), den * den};
}

IterLaurent BivarRational::eval(const IterLaurent& x, const IterLaurent& y, long t_rel, long u_rel) const {
  IterLaurent d = den.eval(x, y, t_rel, u_rel);
  if (!d.is_unit()) throw ZeroDenominator("denominator expands to zero (or is uncertifiable) at this flag");
  return num.eval(x, y, t_rel, u_rel) * d.invert(t_rel, u_rel);
}

std::string BivarRational::str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }

UniPoly UniPoly::from_coeffs(const FieldSpec& f, const std::vector<Scalar>& asc) {
  UniPoly p(f);
  for (std::size_t i = 0; i < asc.size(); ++i) p.add_term(static_cast<long>(i), asc[i]);
  return p;
}

void UniPoly::add_term(long e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.insert({e, c});
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

long UniPoly::degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
long UniPoly::low_degree() const { return c_.empty() ? 0 : c_.begin()->first; }

Scalar UniPoly::eval(const Scalar& a) const {
  Scalar acc = Scalar::zero(field_);
  for (const auto& [e, c] : c_) acc = acc + c * a.pow(e);
  return acc;
}

UniPoly UniPoly::divide_linear(const Scalar& root) const {
  // synthetic division of the polynomial part; caller guarantees eval(root)=0
  long lo = low_degree();
  if (lo < 0) throw Error("divide_linear expects a polynomial");
  std::vector<Scalar> coeffs(static_cast<std::size_t>(degree() + 1), Scalar::zero(field_));
  for (const auto& [e, c] : c_) coeffs[static_cast<std::size_t>(e)] = c;
  UniPoly q(field_);
  Scalar carry = Scalar::zero(field_);
  for (long e = degree(); e >= 1; --e) {
    carry = coeffs[static_cast<std::size_t>(e)] + carry * root;
    q.add_term(e - 1, carry);
  }
  return q;
}

UniPoly::Roots UniPoly::roots() const {
  Roots out{{}, true};
  if (is_zero()) throw Error("roots of the zero polynomial");
  long lo = low_degree();
  if (lo < 0) throw Error("roots expects a polynomial (no negative exponents)");
  // strip x^lo and record 0 as a root
  UniPoly p(field_);
  for (const auto& [e, c] : c_) p.add_term(e - lo, c);
  if (lo > 0) out.values.push_back(Scalar::zero(field_));
  if (p.degree() == 0) return out;

  if (field_.kind == FieldKind::prime_field) {
    if (field_.p > 200000)
      throw UnsupportedConfiguration("root scan over a prime field this large is not supported");
    for (std::uint32_t v = (lo > 0 ? 1 : 0); v < field_.p; ++v) {
      Scalar s = Scalar::from_int(field_, v);
      if (p.eval(s).is_zero()) out.values.push_back(s);
    }
    return out;  // the scan is exhaustive
  }

  // rationals: candidates p/q with p | constant, q | lead of the integer model
  BigInt lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    BigInt den = boost::multiprecision::denominator(c.rational());
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::map<long, BigInt> ip;
  for (const auto& [e, c] : p.terms()) ip[e] = boost::multiprecision::numerator(Rational(c.rational() * lcm));
  BigInt lead = ip.rbegin()->second;
  BigInt cst = ip.count(0) ? ip[0] : BigInt(0);
  auto divisors = [](BigInt n) {
    if (n < 0) n = -n;
    std::vector<BigInt> d;
    if (n > BigInt(1000000000000LL)) return d;
    for (BigInt i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        d.push_back(i);
        d.push_back(n / i);
      }
    return d;
  };
  auto dnum = divisors(cst);
  auto dden = divisors(lead);
  if (dnum.empty() || dden.empty()) {
    out.complete = false;  // coefficients too large to factor; caller decides
    return out;
  }
  UniPoly rem = p;
  for (const auto& pn : dnum)
    for (const auto& qd : dden)
      for (int sign : {1, -1}) {
        Scalar s = Scalar::from_rational(field_, Rational(sign * pn, qd));
        while (rem.degree() >= 1 && rem.eval(s).is_zero()) {
          bool seen = false;
          for (const auto& v : out.values) seen = seen || v == s;
          if (!seen) out.values.push_back(s);
          rem = rem.divide_linear(s);
        }
      }
  return out;  // candidates are exhaustive for rational roots
}

IterLaurent hensel_branch(const BivarPoly& f, const Scalar& a0, const Scalar& b0, long order) {
  const FieldSpec& F = f.field();
  if (!f.eval_point(a0, b0).is_zero()) throw UnsupportedFlag("point does not lie on the curve");
  BivarPoly fy = f.dy();
  Scalar slope = fy.eval_point(a0, b0);
  if (slope.is_zero()) throw UnsupportedFlag("curve branch is singular (df/dy vanishes) at the point");

  // Newton is run to twice the requested order so that the final rectangular
  // window [0,order]x[0,order] sits inside the certified (u,t)-adic triangle.
  const long work = 2 * order + 2;
  IterLaurent xs = IterLaurent::constant(F, a0) + IterLaurent::monomial(F, 1, 0, Scalar::one(F));
  IterLaurent t = IterLaurent::monomial(F, 0, 1, Scalar::one(F));

  auto clamp = [&F](const IterLaurent& v, long bound) {
    IterLaurent r(F, v.inner_var(), v.outer_var(), Window{0, bound});
    for (const auto& [j, s] : v.levels()) {
      if (j < 0 || j > bound) continue;
      r.set_level(j, s.truncated(Window{0, bound}));
    }
    return r;
  };

  IterLaurent b = clamp(IterLaurent::constant(F, b0), work);
  long rounds = 2;
  for (long o = 1; o < work + 1; o *= 2) ++rounds;
  for (long it = 0; it < rounds; ++it) {
    IterLaurent val = clamp(f.eval(xs, b, work, work) - t, work);
    IterLaurent deriv = clamp(fy.eval(xs, b, work, work), work);
    b = clamp(b - val * deriv.invert(work, work), work);
  }
  IterLaurent check = clamp(f.eval(xs, b, work, work) - t, work);
  for (const auto& [j, s] : check.levels())
    for (const auto& [e, c] : s.terms())
      if (j + e <= order && !c.is_zero())
        throw WindowCollapse("hensel iteration failed to certify the branch");
  return clamp(b, order);
}

}  // namespace adelic
