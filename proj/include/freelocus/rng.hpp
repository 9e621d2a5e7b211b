#pragma once

#include <cstdint>
#include <random>

#include "freelocus/scalar.hpp"

namespace freelocus {

/// Seedable deterministic RNG.  State is explicit and never shared; mt19937_64
/// has a fully specified output sequence, so runs are reproducible from the
/// seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [lo, hi].  Plain modulo; the tiny bias is irrelevant for
  // sampling and keeps the stream implementation-independent.
  long next_int(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

  Rat next_rat(long bound) { return Rat(next_int(-bound, bound)); }

  Scalar next_scalar(long bound, bool complex_part) {
    Rat re = next_rat(bound);
    Rat im = complex_part ? next_rat(bound) : Rat(0);
    return Scalar(re, im);
  }

  Scalar next_nonzero_scalar(long bound, bool complex_part) {
    for (;;) {
      Scalar s = next_scalar(bound, complex_part);
      if (!s.is_zero()) return s;
    }
  }

  /// Derive an independent child stream (for canonical parallel aggregation).
  Rng fork(std::uint64_t salt) {
    return Rng(seed_ ^ (0x9e3779b97f4a7c15ull * (salt + 1)) ^ eng_());
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

}  // namespace freelocus
