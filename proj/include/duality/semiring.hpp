#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duality/kernels.hpp"
#include "duality/rational.hpp"
#include "duality/report.hpp"
#include "duality/rng.hpp"

namespace duality {

enum class SemiringKind { boolean, natural, nonneg_rational, integers_mod, table };

struct SemiringProfile {
  bool nontrivial = false;
  bool zerosumfree = false;
  bool integral = false;
  bool semifield = false;
  /// Counterexamples found while classifying (e.g. {"zero_divisor": ["2","3"]}).
  json witness = json::object();

  friend bool operator==(const SemiringProfile& a, const SemiringProfile& b) {
    return a.nontrivial == b.nontrivial && a.zerosumfree == b.zerosumfree &&
           a.integral == b.integral && a.semifield == b.semifield;
  }
};

/// A commutative semiring whose values are carried as Rationals: {0,1} for the
/// Booleans, non-negative integers for N, residues 0..n-1 for Z_n, indices for
/// table semirings. Immutable and cheap to copy.
class Semiring {
 public:
  static Semiring boolean();
  static Semiring natural();
  static Semiring nonneg_rationals();
  static Semiring integers_mod(unsigned n);
  /// Finite semiring on {0..n-1} given by Cayley tables. Not validated here;
  /// run check_semiring_laws.
  static Semiring table(std::string name, std::vector<std::vector<unsigned>> add,
                        std::vector<std::vector<unsigned>> mul, unsigned zero, unsigned one);

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] SemiringKind kind() const;
  [[nodiscard]] Rational zero() const;
  [[nodiscard]] Rational one() const;
  [[nodiscard]] Rational add(const Rational& a, const Rational& b) const;
  [[nodiscard]] Rational mul(const Rational& a, const Rational& b) const;
  [[nodiscard]] bool contains(const Rational& a) const;
  [[nodiscard]] bool is_finite() const;
  /// All elements in increasing order; finite semirings only.
  [[nodiscard]] std::vector<Rational> elements() const;
  [[nodiscard]] std::optional<Rational> inverse(const Rational& a) const;
  /// Known classification of the infinite built-ins.
  [[nodiscard]] std::optional<SemiringProfile> declared_profile() const;
  [[nodiscard]] Rational sample(Rng& rng) const;
  /// Sum of a list under this semiring's addition.
  [[nodiscard]] Rational total(const std::vector<Rational>& xs) const;

  friend bool operator==(const Semiring& a, const Semiring& b) { return a.name() == b.name(); }

  struct Impl;

 private:
  explicit Semiring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Structure-preserving map between semirings, carried as a function.
struct SemiringHom {
  Semiring from;
  Semiring to;
  std::function<Rational(const Rational&)> map;
  Rational operator()(const Rational& x) const { return map(x); }
};

SemiringHom identity_hom(const Semiring& s);

/// Commutative-semiring laws: exhaustive over triples when finite, otherwise
/// over `samples` seeded triples.
Report check_semiring_laws(const Semiring& s, std::size_t samples, std::uint64_t seed,
                           Exec exec = Exec::parallel);

/// Throws LawViolation if the laws fail. Finite semirings are classified by
/// exhaustive scans; infinite built-ins return their declared profile after
/// a sampled cross-check of `budget` pairs.
SemiringProfile classify_semiring(const Semiring& s, std::size_t budget, std::uint64_t seed);

/// h(0) = 0, h(x) = 1 otherwise, into the Booleans. Throws NotEligible with the
/// failing witness unless s is nontrivial, zerosumfree and integral.
SemiringHom support_hom(const Semiring& s, std::size_t budget = 256, std::uint64_t seed = kDefaultSeed);

/// Verifies h preserves (0,+) and (1,*) on enumerated or sampled pairs.
Report check_semiring_hom(const SemiringHom& h, std::size_t samples, std::uint64_t seed);

}  // namespace duality
