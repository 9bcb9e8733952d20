#include "adelic/series.hpp"

#include <sstream>

namespace adelic {

std::string Window::str() const {
  std::ostringstream os;
  os << "[" << lo << "..";
  if (exact())
    os << "inf";
  else
    os << hi;
  os << "]";
  return os.str();
}

LaurentSeries1::LaurentSeries1(FieldSpec f, std::string var, Window w)
    : field_(f), var_(std::move(var)), win_(w) {
  if (win_.empty()) throw WindowCollapse("empty window " + win_.str() + " for series in " + var_);
}

LaurentSeries1 LaurentSeries1::zero(const FieldSpec& f, const std::string& var) {
  return LaurentSeries1(f, var, Window{0, Window::kInf});
}

LaurentSeries1 LaurentSeries1::constant(const FieldSpec& f, const std::string& var, const Scalar& c) {
  return monomial(f, var, 0, c);
}

LaurentSeries1 LaurentSeries1::monomial(const FieldSpec& f, const std::string& var, long e, const Scalar& c) {
  LaurentSeries1 s(f, var, Window{std::min(e, 0L), Window::kInf});
  s.set(e, c);
  return s;
}

Scalar LaurentSeries1::coeff(long e) const {
  if (!known(e))
    throw WindowCollapse("coefficient of " + var_ + "^" + std::to_string(e) + " outside certified window " +
                         win_.str());
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Scalar::zero(field_) : it->second;
}

void LaurentSeries1::set(long e, const Scalar& c) {
  if (!known(e)) throw WindowCollapse("setting coefficient outside window");
  if (e < win_.lo) {
    if (c.is_zero()) return;
    win_.lo = e;  // extend certified-zero floor to cover the new term
  }
  if (c.is_zero())
    coeffs_.erase(e);
  else
    coeffs_.insert_or_assign(e, c);
}

void LaurentSeries1::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second.is_zero() || it->first > win_.hi || it->first < win_.lo)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

long LaurentSeries1::valuation() const {
  if (!coeffs_.empty()) return coeffs_.begin()->first;
  if (win_.exact()) throw ZeroOrUnknown("valuation of the zero series in " + var_);
  throw ZeroOrUnknown("no certified nonzero coefficient in window " + win_.str());
}

LaurentSeries1 LaurentSeries1::operator-() const {
  LaurentSeries1 r = *this;
  for (auto& [e, c] : r.coeffs_) c = -c;
  return r;
}

LaurentSeries1 LaurentSeries1::operator+(const LaurentSeries1& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("series over different fields");
  if (var_ != o.var_) throw FieldMismatch("series in different variables: " + var_ + " vs " + o.var_);
  LaurentSeries1 r(field_, var_, Window::plus(win_, o.win_));
  for (const auto& [e, c] : coeffs_)
    if (e <= r.win_.hi) r.coeffs_.insert_or_assign(e, c);
  for (const auto& [e, c] : o.coeffs_) {
    if (e > r.win_.hi) continue;
    auto it = r.coeffs_.find(e);
    if (it == r.coeffs_.end())
      r.coeffs_.insert({e, c});
    else
      it->second = it->second + c;
  }
  r.normalize();
  return r;
}

LaurentSeries1 LaurentSeries1::operator-(const LaurentSeries1& o) const { return *this + (-o); }

LaurentSeries1 LaurentSeries1::operator*(const LaurentSeries1& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("series over different fields");
  if (var_ != o.var_) throw FieldMismatch("series in different variables");
  long pa = pnz_lo(), pb = o.pnz_lo();
  if (pa >= Window::kInf || pb >= Window::kInf) return zero(field_, var_);
  Window w{pa + pb, std::min(Window::add(win_.hi, pb), Window::add(pa, o.win_.hi))};
  if (w.empty()) throw WindowCollapse("product window collapsed: " + win_.str() + " * " + o.win_.str());
  LaurentSeries1 r(field_, var_, w);
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_) {
      long e = e1 + e2;
      if (e > w.hi) continue;
      auto it = r.coeffs_.find(e);
      if (it == r.coeffs_.end())
        r.coeffs_.insert({e, c1 * c2});
      else
        it->second = it->second + c1 * c2;
    }
  r.normalize();
  return r;
}

LaurentSeries1 LaurentSeries1::scaled(const Scalar& c) const {
  LaurentSeries1 r(field_, var_, win_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : coeffs_) r.coeffs_.insert({e, v * c});
  return r;
}

LaurentSeries1 LaurentSeries1::shifted(long k) const {
  LaurentSeries1 r(field_, var_, Window{win_.lo + k, Window::add(win_.hi, k)});
  for (const auto& [e, v] : coeffs_) r.coeffs_.insert({e + k, v});
  return r;
}

LaurentSeries1 LaurentSeries1::invert(long rel) const {
  long v;
  try {
    v = valuation();
  } catch (const ZeroOrUnknown&) {
    throw NotAUnit("cannot invert: no certified nonzero leading coefficient");
  }
  Scalar lead = coeff(v);
  if (coeffs_.size() == 1 && win_.exact()) {
    return monomial(field_, var_, -v, lead.inv());  // exact monomial, any requested precision
  }
  if (rel < 0) {
    if (win_.exact()) throw WindowCollapse("inverting an exact non-monomial needs an explicit precision");
    rel = win_.hi - v;
  }
  // never deliver more relative precision than the input certifies
  if (!win_.exact()) rel = std::min(rel, win_.hi - v);
  // a = lead*u^v*(1 + eps), eps of positive relative order; geometric sum
  LaurentSeries1 eps(field_, var_, Window{1, rel});
  for (const auto& [e, c] : coeffs_)
    if (e != v && e - v <= rel) eps.coeffs_.insert({e - v, c / lead});
  LaurentSeries1 acc = constant(field_, var_, Scalar::one(field_)).truncated(Window{0, rel});
  LaurentSeries1 term = acc;
  for (long k = 1; k <= rel && !term.coeffs_.empty(); ++k) {
    term = (term * eps).truncated(Window{0, rel});
    term = -term;
    acc = acc + term;
  }
  acc.win_ = Window{0, rel};
  return acc.scaled(lead.inv()).shifted(-v);
}

LaurentSeries1 LaurentSeries1::pow(long e, long rel) const {
  LaurentSeries1 base = e < 0 ? invert(rel) : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  LaurentSeries1 acc = constant(field_, var_, Scalar::one(field_));
  while (k) {
    if (k & 1) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

LaurentSeries1 LaurentSeries1::derivative() const {
  LaurentSeries1 r(field_, var_, Window{win_.lo - 1, win_.exact() ? Window::kInf : win_.hi - 1});
  for (const auto& [e, c] : coeffs_) {
    Scalar d = c * Scalar::from_int(field_, e);
    if (!d.is_zero()) r.coeffs_.insert({e - 1, d});
  }
  return r;
}

LaurentSeries1 LaurentSeries1::truncated(Window w) const {
  // caps certainty at w.hi; the certified-zero floor is never raised, since
  // raising it would silently turn dropped coefficients into claimed zeros
  Window nw{win_.lo, std::min(win_.hi, w.hi)};
  if (nw.empty()) throw WindowCollapse("truncation emptied window");
  LaurentSeries1 r(field_, var_, nw);
  for (const auto& [e, c] : coeffs_)
    if (e <= nw.hi) r.coeffs_.insert({e, c});
  return r;
}

bool LaurentSeries1::agrees(const LaurentSeries1& o) const {
  for (const auto& [e, c] : coeffs_)
    if (o.known(e) && !(o.coeff(e) == c)) return false;
  for (const auto& [e, c] : o.coeffs_)
    if (known(e) && !(coeff(e) == c)) return false;
  return true;
}

std::string LaurentSeries1::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << " + ";
    os << c.str() << "*" << var_ << "^" << e;
    first = false;
  }
  if (first) os << "0";
  if (!win_.exact()) os << " @" << win_.str();
  return os.str();
}

// ---------------------------------------------------------------------------

IterLaurent::IterLaurent(FieldSpec f, std::string inner, std::string outer, Window tw)
    : field_(f), inner_(std::move(inner)), outer_(std::move(outer)), tw_(tw) {
  if (tw_.empty()) throw WindowCollapse("empty t-window " + tw_.str());
}

IterLaurent IterLaurent::zero(const FieldSpec& f, const std::string& inner, const std::string& outer) {
  return IterLaurent(f, inner, outer, Window{0, Window::kInf});
}

IterLaurent IterLaurent::one(const FieldSpec& f, const std::string& inner, const std::string& outer) {
  return constant(f, Scalar::one(f), inner, outer);
}

IterLaurent IterLaurent::constant(const FieldSpec& f, const Scalar& c, const std::string& inner,
                                  const std::string& outer) {
  return monomial(f, 0, 0, c, inner, outer);
}

IterLaurent IterLaurent::monomial(const FieldSpec& f, long u_exp, long t_exp, const Scalar& c,
                                  const std::string& inner, const std::string& outer) {
  IterLaurent r(f, inner, outer, Window{std::min(t_exp, 0L), Window::kInf});
  if (!c.is_zero()) r.levels_.insert({t_exp, LaurentSeries1::monomial(f, inner, u_exp, c)});
  return r;
}

LaurentSeries1 IterLaurent::level(long j) const {
  auto it = levels_.find(j);
  if (it != levels_.end()) return it->second;
  if (j < tw_.lo || tw_.contains(j)) return LaurentSeries1::zero(field_, inner_);
  throw WindowCollapse("t-level " + std::to_string(j) + " outside certified window " + tw_.str());
}

void IterLaurent::set_level(long j, LaurentSeries1 s) {
  if (j < tw_.lo) tw_.lo = j;
  if (j > tw_.hi) throw WindowCollapse("t-level above certified window");
  if (s.certified_coeffs_all_zero() && s.window().exact())
    levels_.erase(j);
  else
    levels_.insert_or_assign(j, std::move(s));
}

bool IterLaurent::coeff_known(long t_exp, long u_exp) const {
  if (t_exp < tw_.lo) return true;
  if (!tw_.contains(t_exp)) return false;
  return level(t_exp).known(u_exp);
}

Scalar IterLaurent::coeff(long t_exp, long u_exp) const { return level(t_exp).coeff(u_exp); }

bool IterLaurent::is_zero_certified() const {
  if (!tw_.exact()) return false;
  for (const auto& [j, s] : levels_)
    if (!s.is_zero_certified()) return false;
  return true;
}

long IterLaurent::t_pnz_lo() const {
  for (const auto& [j, s] : levels_) {
    if (!s.certified_coeffs_all_zero()) return j;
    if (!s.window().exact()) return j;  // unknown u-tail could be nonzero
  }
  return tw_.exact() ? Window::kInf : tw_.hi + 1;
}

bool IterLaurent::is_one() const {
  if (levels_.size() != 1) return false;
  const auto& [j, s] = *levels_.begin();
  if (j != 0 || !tw_.exact()) return false;
  return s.window().exact() && s.terms().size() == 1 && s.terms().begin()->first == 0 &&
         s.terms().begin()->second.is_one();
}

void IterLaurent::check(const IterLaurent& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("iterated series over different fields");
  if (inner_ != o.inner_ || outer_ != o.outer_)
    throw FieldMismatch("iterated series in different variable pairs");
}

void IterLaurent::normalize() {
  for (auto it = levels_.begin(); it != levels_.end();) {
    if (it->second.certified_coeffs_all_zero() && it->second.window().exact())
      it = levels_.erase(it);
    else
      ++it;
  }
}

IterLaurent IterLaurent::operator-() const {
  IterLaurent r = *this;
  for (auto& [j, s] : r.levels_) s = -s;
  return r;
}

IterLaurent IterLaurent::operator+(const IterLaurent& o) const {
  check(o);
  IterLaurent r(field_, inner_, outer_, Window::plus(tw_, o.tw_));
  for (long j : [&] {
         std::map<long, int> keys;
         for (const auto& [k, s] : levels_) keys[k];
         for (const auto& [k, s] : o.levels_) keys[k];
         std::vector<long> v;
         for (const auto& [k, unused] : keys) v.push_back(k);
         return v;
       }()) {
    if (j > r.tw_.hi) continue;
    r.set_level(j, level(j) + o.level(j));
  }
  r.normalize();
  return r;
}

IterLaurent IterLaurent::operator-(const IterLaurent& o) const { return *this + (-o); }

IterLaurent IterLaurent::operator*(const IterLaurent& o) const {
  check(o);
  long pa = t_pnz_lo(), pb = o.t_pnz_lo();
  if (pa >= Window::kInf || pb >= Window::kInf) return zero(field_, inner_, outer_);
  Window w{pa + pb, std::min(Window::add(tw_.hi, pb), Window::add(pa, o.tw_.hi))};
  if (w.empty()) throw WindowCollapse("t-window collapsed in product");
  IterLaurent r(field_, inner_, outer_, w);
  for (const auto& [j1, s1] : levels_) {
    for (const auto& [j2, s2] : o.levels_) {
      long j = j1 + j2;
      if (j > w.hi) continue;
      LaurentSeries1 prod = s1 * s2;
      auto it = r.levels_.find(j);
      if (it == r.levels_.end())
        r.levels_.insert({j, std::move(prod)});
      else
        it->second = it->second + prod;
    }
  }
  r.normalize();
  return r;
}

IterLaurent IterLaurent::scaled(const Scalar& c) const {
  IterLaurent r(field_, inner_, outer_, tw_);
  if (c.is_zero()) return r;
  for (const auto& [j, s] : levels_) r.levels_.insert({j, s.scaled(c)});
  return r;
}

IterLaurent IterLaurent::shifted(long u_exp, long t_exp) const {
  IterLaurent r(field_, inner_, outer_, Window{tw_.lo + t_exp, Window::add(tw_.hi, t_exp)});
  for (const auto& [j, s] : levels_) r.levels_.insert({j + t_exp, s.shifted(u_exp)});
  return r;
}

std::pair<long, long> IterLaurent::valuation2() const {
  for (const auto& [j, s] : levels_) {
    if (!s.certified_coeffs_all_zero()) return {j, s.valuation()};
    if (!s.window().exact())
      throw ZeroOrUnknown("leading t-level " + std::to_string(j) + " is zero on its window but not exact");
  }
  throw ZeroOrUnknown("no certified nonzero coefficient");
}

bool IterLaurent::is_unit() const {
  try {
    valuation2();
    return true;
  } catch (const ZeroOrUnknown&) {
    return false;
  }
}

IterLaurent IterLaurent::invert(long t_rel, long u_rel) const {
  long vt;
  try {
    vt = valuation2().first;
  } catch (const ZeroOrUnknown& e) {
    throw NotAUnit(std::string("cannot invert: ") + e.what());
  }
  // check nothing uncertified sits below the leading level
  for (const auto& [j, s] : levels_)
    if (j < vt && !s.window().exact() && !s.certified_coeffs_all_zero())
      throw NotAUnit("uncertified data below the leading t-level");

  if (tw_.exact() && levels_.size() == 1) {
    // exact single level: the inverse is t^-vt times the level inverse,
    // exact in t even when the level inverse is u-windowed
    LaurentSeries1 inv0 = levels_.begin()->second.invert(u_rel);
    IterLaurent r(field_, inner_, outer_, Window{std::min(-vt, 0L), Window::kInf});
    r.set_level(-vt, inv0);
    return r;
  }
  if (t_rel < 0) {
    if (tw_.exact())
      throw WindowCollapse("inverting an exact multi-level series needs an explicit t precision");
    t_rel = tw_.hi - vt;
  }
  if (!tw_.exact()) t_rel = std::min(t_rel, tw_.hi - vt);

  LaurentSeries1 lead = level(vt);
  LaurentSeries1 b0 = lead.invert(u_rel);
  IterLaurent r(field_, inner_, outer_, Window{-vt, -vt + t_rel});
  r.set_level(-vt, b0);
  for (long k = 1; k <= t_rel; ++k) {
    LaurentSeries1 acc = LaurentSeries1::zero(field_, inner_);
    for (long i = 1; i <= k; ++i) {
      LaurentSeries1 ai = level(vt + i);
      if (ai.certified_coeffs_all_zero() && ai.window().exact()) continue;
      acc = acc + ai * r.level(-vt + k - i);
    }
    if (acc.certified_coeffs_all_zero() && acc.window().exact()) continue;
    r.set_level(-vt + k, -(b0 * acc));
  }
  r.normalize();
  return r;
}

IterLaurent IterLaurent::pow(long e, long t_rel, long u_rel) const {
  IterLaurent base = e < 0 ? invert(t_rel, u_rel) : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  IterLaurent acc = one(field_, inner_, outer_);
  while (k) {
    if (k & 1) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

IterLaurent IterLaurent::d_inner() const {
  IterLaurent r(field_, inner_, outer_, tw_);
  for (const auto& [j, s] : levels_) r.set_level(j, s.derivative());
  r.normalize();
  return r;
}

IterLaurent IterLaurent::d_outer() const {
  IterLaurent r(field_, inner_, outer_, Window{tw_.lo - 1, tw_.exact() ? Window::kInf : tw_.hi - 1});
  for (const auto& [j, s] : levels_) {
    LaurentSeries1 d = s.scaled(Scalar::from_int(field_, j));
    if (!(d.certified_coeffs_all_zero() && d.window().exact())) r.levels_.insert({j - 1, d});
  }
  return r;
}

IterLaurent IterLaurent::truncated_t(Window tw) const {
  Window nw{tw_.lo, std::min(tw_.hi, tw.hi)};
  if (nw.empty()) throw WindowCollapse("t truncation emptied window");
  IterLaurent r(field_, inner_, outer_, nw);
  for (const auto& [j, s] : levels_)
    if (j <= nw.hi) r.levels_.insert({j, s});
  return r;
}

IterLaurent IterLaurent::with_vars(const std::string& inner, const std::string& outer) const {
  IterLaurent r(field_, inner, outer, tw_);
  for (const auto& [j, s] : levels_) {
    LaurentSeries1 t(field_, inner, s.window());
    for (const auto& [e, c] : s.terms()) t.set(e, c);
    r.levels_.insert({j, t});
  }
  return r;
}

bool IterLaurent::agrees(const IterLaurent& o) const {
  check(o);
  long hi = std::min(tw_.hi, o.tw_.hi);
  long lo = std::min(tw_.lo, o.tw_.lo);
  for (long j = lo; j <= hi && j - lo < 512; ++j) {
    bool ka = (j < tw_.lo) || tw_.contains(j);
    bool kb = (j < o.tw_.lo) || o.tw_.contains(j);
    if (!ka || !kb) continue;
    if (!level(j).agrees(o.level(j))) return false;
  }
  return true;
}

bool IterLaurent::equals_certified(const IterLaurent& o, Window tw, Window uw) const {
  check(o);
  for (long j = tw.lo; j <= tw.hi; ++j)
    for (long m = uw.lo; m <= uw.hi; ++m) {
      if (!coeff_known(j, m) || !o.coeff_known(j, m)) return false;
      if (!(coeff(j, m) == o.coeff(j, m))) return false;
    }
  return true;
}

std::string IterLaurent::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, s] : levels_) {
    if (!first) os << " + ";
    os << "(" << s.str() << ")*" << outer_ << "^" << j;
    first = false;
  }
  if (first) os << "0";
  if (!tw_.exact()) os << " @t" << tw_.str();
  return os.str();
}

Scalar residue2(const TwoForm& w) {
  Scalar a = w.coefficient.coeff(-1, -1);
  return w.frame_du_dt ? a : -a;
}

}  // namespace adelic
