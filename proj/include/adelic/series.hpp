#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "adelic/field.hpp"

namespace adelic {

// Certified-exponent window of a truncated Laurent expansion.
//
// Semantics: coefficients at exponents below `lo` are certified zero,
// coefficients in [lo, hi] are certified as stored, and coefficients above
// `hi` are unknown. hi == kInf marks fully exact data (a Laurent polynomial).
struct Window {
  static constexpr long kInf = 1L << 48;

  long lo = 0;
  long hi = kInf;

  bool exact() const { return hi >= kInf; }
  bool empty() const { return hi < lo; }
  bool contains(long e) const { return e >= lo && e <= hi; }

  static long add(long a, long b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

  // certified region of a sum
  static Window plus(const Window& a, const Window& b) {
    return Window{std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
  }
  // certified region of a product
  static Window times(const Window& a, const Window& b) {
    return Window{a.lo + b.lo, std::min(add(a.hi, b.lo), add(a.lo, b.hi))};
  }
  Window intersect(const Window& o) const { return Window{std::max(lo, o.lo), std::min(hi, o.hi)}; }
  bool operator==(const Window&) const = default;

  std::string str() const;
};

// One-variable truncated Laurent series over an exact field. Stored sparsely;
// every kept coefficient is nonzero and certified by the window.
class LaurentSeries1 {
 public:
  LaurentSeries1(FieldSpec f, std::string var, Window w);

  static LaurentSeries1 zero(const FieldSpec& f, const std::string& var);
  static LaurentSeries1 constant(const FieldSpec& f, const std::string& var, const Scalar& c);
  static LaurentSeries1 monomial(const FieldSpec& f, const std::string& var, long e, const Scalar& c);

  const FieldSpec& field() const { return field_; }
  const std::string& var() const { return var_; }
  const Window& window() const { return win_; }
  const std::map<long, Scalar>& terms() const { return coeffs_; }

  bool known(long e) const { return e < win_.lo || win_.contains(e); }
  Scalar coeff(long e) const;  // throws WindowCollapse outside the certified region
  void set(long e, const Scalar& c);

  bool is_zero_certified() const { return coeffs_.empty() && win_.exact(); }
  // true when every certified coefficient vanishes (the series may still be
  // nonzero beyond the window)
  bool certified_coeffs_all_zero() const { return coeffs_.empty(); }
  // lowest exponent that could carry a nonzero coefficient; kInf when the
  // series is certified zero. Product windows are computed against this
  // rather than the window floor.
  long pnz_lo() const {
    if (!coeffs_.empty()) return coeffs_.begin()->first;
    return win_.exact() ? Window::kInf : win_.hi + 1;
  }

  long valuation() const;  // throws ZeroOrUnknown
  Scalar leading() const { return coeff(valuation()); }

  LaurentSeries1 operator-() const;
  LaurentSeries1 operator+(const LaurentSeries1& o) const;
  LaurentSeries1 operator-(const LaurentSeries1& o) const;
  LaurentSeries1 operator*(const LaurentSeries1& o) const;
  LaurentSeries1 scaled(const Scalar& c) const;
  LaurentSeries1 shifted(long k) const;  // multiply by var^k

  // Multiplicative inverse. Exact monomials invert exactly; otherwise the
  // result is certified on `rel` exponents above its valuation, where `rel`
  // defaults to the input's own relative precision (hi - valuation).
  LaurentSeries1 invert(long rel = -1) const;
  LaurentSeries1 pow(long e, long rel = -1) const;
  LaurentSeries1 derivative() const;
  LaurentSeries1 truncated(Window w) const;

  // equal on the intersection of certified regions
  bool agrees(const LaurentSeries1& o) const;

  std::string str() const;

 private:
  void normalize();
  FieldSpec field_;
  std::string var_;
  std::map<long, Scalar> coeffs_;
  Window win_;
};

// Truncated element of an iterated Laurent field k((u))((t)): a t-windowed
// stack of u-series, one per t-level, each carrying its own u-window.
class IterLaurent {
 public:
  IterLaurent(FieldSpec f, std::string inner, std::string outer, Window tw);

  static IterLaurent zero(const FieldSpec& f, const std::string& inner = "u", const std::string& outer = "t");
  static IterLaurent one(const FieldSpec& f, const std::string& inner = "u", const std::string& outer = "t");
  static IterLaurent constant(const FieldSpec& f, const Scalar& c, const std::string& inner = "u",
                              const std::string& outer = "t");
  static IterLaurent monomial(const FieldSpec& f, long u_exp, long t_exp, const Scalar& c,
                              const std::string& inner = "u", const std::string& outer = "t");

  const FieldSpec& field() const { return field_; }
  const std::string& inner_var() const { return inner_; }
  const std::string& outer_var() const { return outer_; }
  const Window& t_window() const { return tw_; }
  const std::map<long, LaurentSeries1>& levels() const { return levels_; }

  // level as a series; absent levels inside the window are exact zero
  LaurentSeries1 level(long j) const;
  void set_level(long j, LaurentSeries1 s);

  bool coeff_known(long t_exp, long u_exp) const;
  Scalar coeff(long t_exp, long u_exp) const;  // throws WindowCollapse when unknown

  bool is_zero_certified() const;
  bool is_one() const;
  // lowest t-level that could carry a nonzero series (see LaurentSeries1)
  long t_pnz_lo() const;

  IterLaurent operator-() const;
  IterLaurent operator+(const IterLaurent& o) const;
  IterLaurent operator-(const IterLaurent& o) const;
  IterLaurent operator*(const IterLaurent& o) const;
  IterLaurent scaled(const Scalar& c) const;
  IterLaurent shifted(long u_exp, long t_exp) const;

  // (v_t, v_u) of the lowest certified nonzero term; throws ZeroOrUnknown.
  std::pair<long, long> valuation2() const;

  bool is_unit() const;  // lowest level exists and its u-series has a certified leading coefficient

  // Inverse of a unit. Relative t-precision defaults to the certified one;
  // `t_rel`/`u_rel` override for exact inputs whose inverse is infinite.
  IterLaurent invert(long t_rel = -1, long u_rel = -1) const;
  IterLaurent pow(long e, long t_rel = -1, long u_rel = -1) const;

  IterLaurent d_inner() const;  // ∂/∂u
  IterLaurent d_outer() const;  // ∂/∂t

  IterLaurent truncated_t(Window tw) const;
  IterLaurent with_vars(const std::string& inner, const std::string& outer) const;

  bool agrees(const IterLaurent& o) const;
  // agreement on at least the given spans around the valuation; used by tests
  bool equals_certified(const IterLaurent& o, Window tw, Window uw) const;

  std::string str() const;

 private:
  void check(const IterLaurent& o) const;
  void normalize();
  FieldSpec field_;
  std::string inner_, outer_;
  std::map<long, LaurentSeries1> levels_;
  Window tw_;
};

// A 2-form coefficient against an ordered frame. frame_du_dt records whether
// the coefficient is expressed against du∧dt (the canonical order) or dt∧du.
struct TwoForm {
  IterLaurent coefficient;
  bool frame_du_dt = true;
};

// Coefficient a_{-1,-1} of u^-1 t^-1 in the du∧dt frame; antisymmetric under
// frame swap. Throws WindowCollapse when that coefficient is not certified.
Scalar residue2(const TwoForm& w);

// Series literal grammar: terms `c*u^i*t^j` joined by +/-, with an optional
// window annotation `@[tlo..thi; ulo..uhi]` (absent annotation = exact).
IterLaurent parse_series(const std::string& text, const FieldSpec& f, const std::string& inner = "u",
                         const std::string& outer = "t");

}  // namespace adelic
