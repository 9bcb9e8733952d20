#pragma once

#include <map>

#include "adelic/surface.hpp"

namespace adelic {

// Membership evidence for the splitting subgroups. Tags are conservative:
// an idele may lie in a subgroup without carrying the tag, but never the
// other way around.
enum IdeleTag : unsigned {
  kTagA12 = 1u,       // unit monomial part along every curve
  kTagA01 = 2u,       // curvewise data (one K_C-factor per curve)
  kTagA02 = 4u,       // pointwise data (one germ per point)
  kTagRational = 8u,  // diagonal image of k(X)^*
};

// Invertible adele: a per-curve power of the global uniformizer t_C times
// certified unit corrections at finitely many flags (default 1 elsewhere).
struct SurfaceIdele {
  Surface surf;
  std::map<int, long> monomial;            // invariant curve id -> t_C exponent
  std::map<FlagKey, IterLaurent> units;    // certified units of O_{K_{x,C}}
  unsigned tags = 0;

  static SurfaceIdele one(const Surface& s);
  // j_{1,D}: the curvewise local-equation idele (components t_C^{a_C})
  static SurfaceIdele curvewise_equation(const Surface& s, const SurfaceDivisor& d);
  // j_{2,D}: the pointwise local-equation idele (coordinate germs at points)
  static SurfaceIdele pointwise_equation(const Surface& s, const SurfaceDivisor& d, long order);
  // diagonal image of a rational function; tags A01, A02 and rational
  static SurfaceIdele rational_function(const Surface& s, const BivarRational& r, long order);
  // element of O_{K_C}^* given by a rational function with v_C = 0; nontrivial
  // only at the flags of that curve
  static SurfaceIdele curve_unit(const Surface& s, int curve_id, const BivarRational& w, long order);
  // unit germ at a torus-fixed point: a polynomial g(z,z') in the two local
  // coordinate germs (curve of smaller id first) with g(0,0) != 0
  static SurfaceIdele point_unit(const Surface& s, const SurfacePoint& p, const BivarPoly& g);
  // explicit unit data at flags; v_t must vanish at every flag
  static SurfaceIdele a12_unit(const Surface& s, std::map<FlagKey, IterLaurent> parts);

  SurfaceIdele operator*(const SurfaceIdele& o) const;
  SurfaceIdele inverse() const;

  bool has_tag(IdeleTag t) const { return (tags & t) != 0; }
  // divisor div(g) with g A12(D) = A12(D - div g)
  SurfaceDivisor divisor() const;
  bool lattice_trivial() const { return monomial.empty(); }
  // identity up to certified equality of the unit parts
  bool is_identity_certified() const;

  // component at a flag: expansion of t_C^{m_C} times the stored unit
  IterLaurent flag_factor(const FlagKey& flag, long order) const;
  // u-valuation of the component's leading t-level
  long flag_vu(const FlagKey& flag) const;

  bool equals_certified(const SurfaceIdele& o) const;
  std::string str() const;
};

}  // namespace adelic
