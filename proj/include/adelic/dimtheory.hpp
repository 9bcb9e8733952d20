#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/ideles.hpp"

namespace adelic {

// A lattice A12(D), optionally twisted by a monomial idele g (g·A12(D) equals
// A12(D - div g) as a subspace; unit parts act trivially on lattices).
struct LatticeDesc {
  SurfaceDivisor divisor;
  std::optional<SurfaceIdele> twist;

  static LatticeDesc of(const SurfaceDivisor& d) { return LatticeDesc{d, std::nullopt}; }
  static LatticeDesc standard() { return LatticeDesc{SurfaceDivisor{}, std::nullopt}; }

  SurfaceDivisor normalized() const { return twist ? divisor - twist->divisor() : divisor; }
  void require_monomial() const {
    if (!divisor.monomial() || (twist && !twist->divisor().monomial()))
      throw NonMonomial("lattice description must be monomial");
  }
};

// Element of the torsor of dimension theories between two lattices, stored
// as the integer by which it differs from the canonical pointwise-rational
// element. Differences and compositions are then plain integer arithmetic.
struct DimElement {
  LatticeDesc lower;
  LatticeDesc upper;
  long offset;
};

DimElement mu_element(const Surface& s, const LatticeDesc& e1, const LatticeDesc& e2);
DimElement nu_element(const Surface& s, const LatticeDesc& e1, const LatticeDesc& e2);
DimElement dim_compose(const Surface& s, const DimElement& d12, const DimElement& d23);
DimElement dim_dual(const Surface& s, const DimElement& d, const CanonicalData& can);
long nu_minus_mu(const Surface& s, const SurfaceDivisor& f, const SurfaceDivisor& g);

// offset of the canonical curvewise-rational element over nested or general
// monomial pairs; the graded engine behind nu_element
long nu_offset(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up);
// same, with the elementary-step chain walked in reverse curve order; used to
// check chain independence
long nu_offset_reversed(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up);

// curve-level divisor of the t-graded piece added by the elementary step
// F -> F + C at level j = -(F+C)_C
CurveDivisor level_divisor(const Surface& s, int curve_id, const SurfaceDivisor& after);

// The 2-cocycle of the extension against the canonical section: the relative
// dimension [mu-ref(gE1,gE2) | g·mu-ref(E1,E2)], additive in (up - lo).
long delta_cocycle(const Surface& s, const SurfaceIdele& g, const SurfaceDivisor& lo,
                   const SurfaceDivisor& up);

// Graded description of A12(up)/A12(lo) for debugging and tests.
struct GradedPiece {
  int curve;
  long level;
  CurveDivisor e_divisor;
  long h0;
  long h1;
};

struct QuotientModel {
  SurfaceDivisor lower;
  SurfaceDivisor upper;
  std::vector<GradedPiece> pieces;
  std::string dump(const Surface& s) const;
};

QuotientModel quotient_model(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up);

// Evaluation of the duality pairing d(Z) + e(Z^perp) over a family of
// evaluation subspaces indexed by `choice` (deeper monomial tails as the
// choice grows). Independence of the choice is the well-definedness of the
// pairing; the canonical elements pair to zero.
long dual_pairing_value(const Surface& s, const DimElement& d, const DimElement& e,
                        const CanonicalData& can, long choice);

}  // namespace adelic
