#pragma once

#include "adelic/surface.hpp"

namespace adelic {

// Finitely supported collection of local expansions, default 0 elsewhere.
struct AdeleSample {
  std::map<FlagKey, IterLaurent> entries;
};

// Sum over flags of the residue of f·g·omega; bilinear and symmetric.
Scalar global_pairing(const Surface& s, const AdeleSample& f, const AdeleSample& g,
                      const CanonicalData& can, long order);

// A rational multiple of the canonical 2-form. `factors` lists the affine
// denominator components (used to locate poles and branches); the form itself
// is value·omega.
struct FormSpec {
  BivarRational value;
  std::vector<BivarPoly> factors;
  std::string text;
};

// grammar: rational expression in x, y with +,-,*,/,^ and integer literals
FormSpec parse_form(const std::string& text, const FieldSpec& f);

// Sum of residues of value·omega along all flags (x, C) for x in C; exactly 0.
Scalar reciprocity_along_curve(const Surface& s, const FormSpec& form, const SurfaceCurve& c);

// Sum of residues over the curve branches through the point; exactly 0.
Scalar reciprocity_around_point(const Surface& s, const FormSpec& form, const SurfacePoint& p);

struct OrthogonalityReport {
  long box_radius = 0;
  bool pairs_vanish = false;        // box of A12(D) annihilates box of A12((w)-D)
  bool annihilator_matches = false; // kernel dimension equals the dual box count
  long checked_pairs = 0;
  bool pass() const { return pairs_vanish && annihilator_matches; }
};

OrthogonalityReport orthogonality_box_check(const Surface& s, const SurfaceDivisor& d, long box_radius);

}  // namespace adelic
