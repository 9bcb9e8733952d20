#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/bivariate.hpp"
#include "adelic/curve.hpp"
#include "adelic/series.hpp"

namespace adelic {

enum class SurfaceKind { p2, p1xp1 };

// The model surfaces. Coordinates are fixed once per kind:
//   p2    — affine chart (x, y) of [X:Y:Z] with x=X/Z, y=Y/Z; boundary lines
//           L0:{x=0}, L1:{y=0}, L2: the line at infinity.
//   p1xp1 — bi-affine (x, y); rulings F:{x=0}, G:{y=0} plus the two rulings
//           at infinity, labelled F* and G* internally.
struct Surface {
  SurfaceKind kind;
  FieldSpec field;

  static Surface p2(const FieldSpec& f) { return {SurfaceKind::p2, f}; }
  static Surface p1xp1(const FieldSpec& f) { return {SurfaceKind::p1xp1, f}; }
  static Surface parse(const std::string& selector, const FieldSpec& f);

  int invariant_count() const { return kind == SurfaceKind::p2 ? 3 : 4; }
  // curves usable in divisors (the grammar set): L0,L1,L2 / F,G
  std::vector<int> divisor_curves() const;
  std::string curve_label(int id) const;
  std::string name() const { return kind == SurfaceKind::p2 ? "p2" : "p1xp1"; }
  bool operator==(const Surface&) const = default;
};

struct SurfaceCurve {
  int inv = -1;                      // invariant curve id when >= 0
  std::optional<BivarPoly> general;  // affine defining polynomial otherwise

  static SurfaceCurve invariant(int id) { return SurfaceCurve{id, std::nullopt}; }
  static SurfaceCurve from_poly(const BivarPoly& p) { return SurfaceCurve{-1, p}; }

  bool is_invariant() const { return inv >= 0; }
  bool operator==(const SurfaceCurve& o) const;
  bool operator<(const SurfaceCurve& o) const;
  std::string label(const Surface& s) const;
};

// Closed point in the fixed coordinates. Covers affine points of both
// surfaces, points on the P2 line at infinity (parameter xi = x/y), and
// points of P1xP1 with either coordinate infinite.
struct SurfacePoint {
  bool p2_inf = false;             // on L2; `a` then holds xi, a_inf means [1:0:0]
  bool a_inf = false, b_inf = false;
  Scalar a, b;

  static SurfacePoint affine(const Scalar& x, const Scalar& y) { return {false, false, false, x, y}; }
  static SurfacePoint p2_infinity(const Scalar& xi) { return {true, false, false, xi, Scalar::zero(xi.field())}; }
  static SurfacePoint p2_infinity_xi_inf(const FieldSpec& f) {
    return {true, true, false, Scalar::zero(f), Scalar::zero(f)};
  }
  static SurfacePoint prod(const FieldSpec& f, std::optional<Scalar> x, std::optional<Scalar> y) {
    return {false, !x.has_value(), !y.has_value(), x.value_or(Scalar::zero(f)), y.value_or(Scalar::zero(f))};
  }

  bool operator==(const SurfacePoint& o) const;
  bool operator<(const SurfacePoint& o) const;
  std::string str() const;
};

struct SurfaceDivisor {
  std::map<SurfaceCurve, long> coeffs;

  long at(const SurfaceCurve& c) const;
  long at_inv(int id) const { return at(SurfaceCurve::invariant(id)); }
  void add(const SurfaceCurve& c, long m);
  bool monomial() const;
  bool is_zero() const { return coeffs.empty(); }
  long coeff_abs_sum() const;

  SurfaceDivisor operator+(const SurfaceDivisor& o) const;
  SurfaceDivisor operator-(const SurfaceDivisor& o) const;
  SurfaceDivisor operator-() const;
  SurfaceDivisor scaled(long k) const;
  static SurfaceDivisor componentwise_min(const SurfaceDivisor& a, const SurfaceDivisor& b);
  bool operator==(const SurfaceDivisor& o) const { return coeffs == o.coeffs; }
  bool leq(const SurfaceDivisor& o) const;  // componentwise

  static SurfaceDivisor of_curve(const SurfaceCurve& c, long m = 1);
  std::string str(const Surface& s) const;
};

// grammar: `2L0 - 1L2` on p2, `3F + 1G` on p1xp1, `0` for the zero divisor
SurfaceDivisor parse_surface_divisor(const std::string& text, const Surface& s);

// A flag is a (point, curve) pair; the point lies on the curve and the curve
// branch there is smooth.
struct FlagKey {
  SurfaceCurve curve;
  SurfacePoint point;
  bool operator==(const FlagKey& o) const { return curve == o.curve && point == o.point; }
  bool operator<(const FlagKey& o) const {
    if (!(curve == o.curve)) return curve < o.curve;
    return point < o.point;
  }
  std::string str(const Surface& s) const { return "(" + point.str() + ";" + curve.label(s) + ")"; }
};

// Expansion data of a flag: the surface coordinates as certified series in
// the local coordinates (u along the curve, t transverse).
struct FlagData {
  IterLaurent x_of;
  IterLaurent y_of;
  CurvePoint on_curve;          // the point in the curve's own coordinate
  std::optional<int> crossing;  // invariant curve crossing here, if any
};

FlagData flag_data(const Surface& s, const FlagKey& flag, long order);

std::vector<SurfacePoint> fixed_points_of(const Surface& s, int curve_id);
std::vector<FlagKey> all_toric_flags(const Surface& s);
// point of the invariant curve with the given coordinate value (finite, non-fixed)
SurfacePoint aux_point_on(const Surface& s, int curve_id, const Scalar& param);
FlagKey flag_on(const Surface& s, int curve_id, const SurfacePoint& p);

// the global uniformizer t_C of an invariant curve, as a rational function
BivarRational curve_uniformizer(const Surface& s, int curve_id);

// finite flag set sufficient for all downstream computations on the given
// divisors: each support curve at every point where it meets another
// invariant curve, in a deterministic order
std::vector<FlagKey> support_flags(const Surface& s, const std::vector<SurfaceDivisor>& divisors);

enum class LocalEqMode { curvewise, pointwise };

// j_{1,D} (curvewise) or j_{2,D} (pointwise) expanded at the flag.
IterLaurent local_equation(const Surface& s, const SurfaceDivisor& d, const FlagKey& flag, LocalEqMode mode,
                           long order);

// expansion of a rational function at a flag, certified on the requested
// windows
IterLaurent expand_rational(const Surface& s, const BivarPoly& num, const BivarPoly& den, const FlagKey& flag,
                            Window t_window, Window u_window);

long classical_intersection(const Surface& s, const SurfaceDivisor& a, const SurfaceDivisor& b);
long classical_chi_diff(const Surface& s, const SurfaceDivisor& d);

struct CanonicalData {
  BivarRational omega;  // coefficient g in the fixed 2-form g dx∧dy
  SurfaceDivisor k_divisor;
};

CanonicalData canonical_data(const Surface& s);

// coefficient series of g dx∧dy against the flag's du∧dt frame
TwoForm expand_two_form(const Surface& s, const BivarRational& g, const FlagKey& flag, long order);

// default certified-window radius for a computation touching divisors with
// the given total coefficient mass; an override of 0 means automatic
long default_window_radius(long coeff_abs_sum);
void set_window_override(long radius);

}  // namespace adelic
