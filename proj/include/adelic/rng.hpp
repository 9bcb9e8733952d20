#pragma once

#include <cstdint>

#include "adelic/field.hpp"

namespace adelic {

// splitmix64; kept hand-rolled so seeded runs are bit-identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  long below(long n) { return n <= 1 ? 0 : static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

  // inclusive bounds
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }

  bool chance(unsigned num, unsigned den) { return next() % den < num; }

  Scalar scalar(const FieldSpec& f, long amplitude = 9) {
    return Scalar::from_int(f, range(-amplitude, amplitude));
  }

  Scalar nonzero_scalar(const FieldSpec& f, long amplitude = 9) {
    for (;;) {
      Scalar s = scalar(f, amplitude);
      if (!s.is_zero()) return s;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace adelic
