#include "duality/rng.hpp"

#include <cstdlib>
#include <string>

namespace duality {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DUALITY_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      return kDefaultSeed;
    }
  }
  return kDefaultSeed;
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

Rational Rng::unit_rational(long max_den) {
  const long q = between(1, max_den);
  const long p = between(0, q);
  return Rational(p, q);
}

Rational Rng::open_unit_rational(long max_den) {
  const long q = between(2, max_den);
  const long p = between(1, q - 1);
  return Rational(p, q);
}

}  // namespace duality
