#pragma once

#include <cstdint>
#include <random>

#include "duality/rational.hpp"

namespace duality {

/// Seed used when DUALITY_SEED is unset.
inline constexpr std::uint64_t kDefaultSeed = 0x5eedc0de2010ULL;

/// Reads DUALITY_SEED (decimal) or returns kDefaultSeed.
std::uint64_t default_seed();

/// Seeded generator. Only raw engine output is used (no std distributions),
/// so streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (next() >> 63) != 0; }
  /// Rational p/q in [0,1] with 1 <= q <= max_den.
  Rational unit_rational(long max_den);
  /// Rational p/q in (0,1) with 2 <= q <= max_den.
  Rational open_unit_rational(long max_den);

 private:
  std::mt19937_64 engine_;
};

}  // namespace duality
