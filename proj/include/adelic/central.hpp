#pragma once

#include "adelic/dimtheory.hpp"
#include "adelic/report.hpp"

namespace adelic {

enum class Subgroup { a12, a02, a01 };

// Element of the group extending the ideles by Z: a pair of an idele g and a
// dimension theory over (A12(base), g·A12(base)), the latter stored as its
// integer offset against the canonical pointwise-rational element. base is
// the zero divisor for the standard extension and (omega) on the dual side.
struct LiftedElement {
  SurfaceIdele g;
  SurfaceDivisor base;
  long offset;
};

// canonical splittings over the three subgroups
LiftedElement lift(const Surface& s, const SurfaceIdele& g, Subgroup sub);
// arbitrary lift with a chosen central shift (commutators must not see it)
LiftedElement lift_any(const Surface& s, const SurfaceIdele& g, long central_shift);

LiftedElement group_mul(const Surface& s, const LiftedElement& x, const LiftedElement& y);
LiftedElement group_inv(const Surface& s, const LiftedElement& x);
bool lifted_equal(const LiftedElement& x, const LiftedElement& y);

// the central integer of an element whose idele part fixes the reference
// lattice; strict = require the idele to be the certified identity
long central_value(const LiftedElement& x, bool strict = false);

// <x,y> = x'y'x'^-1 y'^-1 for arbitrary lifts; lift independence is
// re-checked with shifted lifts on every call
long commutator(const Surface& s, const SurfaceIdele& x, const SurfaceIdele& y);

long intersection_via_pairing(const Surface& s, const SurfaceDivisor& a, const SurfaceDivisor& b);
// both expressions of the dimension-chain formula; they must agree
long intersection_via_dim_chains(const Surface& s, const SurfaceDivisor& a, const SurfaceDivisor& b);

// transition data of the line bundle attached to a monomial divisor
struct TransitionData {
  SurfaceIdele a01;  // curvewise trivialization change
  SurfaceIdele a02;  // pointwise trivialization change
  SurfaceIdele a21;  // integral comparison; lies in the unit subgroup
};

TransitionData transition_data(const Surface& s, const SurfaceDivisor& d);

// the central integer of lift(a02)·lift(a21)·lift(a10)
long f_invariant(const Surface& s, const SurfaceDivisor& d);

VerifyReport verify_identities(const Surface& s, const SurfaceDivisor& d);

BasisChangeReport basis_change_test(const Surface& s, const SurfaceDivisor& d, long seed, long trials);

// the duality isomorphism: (g, d) -> (g^-1, transported d), based at the
// orthogonal reference lattice; identity on the central subgroup
LiftedElement dual_transport(const Surface& s, const LiftedElement& x, const CanonicalData& can);

}  // namespace adelic
