#pragma once

#include "adelic/central.hpp"
#include "adelic/residues.hpp"
#include "adelic/rng.hpp"

namespace adelic {

// The verification sweeps are embarrassingly parallel over divisor classes
// and samples. Each kernel has a serial reference path and an OpenMP path;
// both produce identical, deterministically ordered results.
enum class RunMode { serial, parallel };

// every monomial divisor with coefficients in [-range, range]
std::vector<SurfaceDivisor> divisor_grid(const Surface& s, long range);

std::vector<VerifyReport> verify_sweep(const Surface& s, long range, RunMode mode);

struct IntersectGridResult {
  long pairs = 0;
  long agreeing = 0;
  std::vector<std::string> mismatches;
  bool pass() const { return pairs == agreeing; }
};

IntersectGridResult intersect_grid(const Surface& s, long range, RunMode mode);

// seeded random 2-forms with boundary poles; checks both reciprocity laws
ReciprocityReport reciprocity_batch(const Surface& s, long samples, long seed, RunMode mode);

// one random form of the batch family; exposed for tests
FormSpec random_reciprocity_form(const Surface& s, Rng& rng);

}  // namespace adelic
