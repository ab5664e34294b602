#pragma once

// Convex algebras (algebras of the distribution monad over Q>=0) in three
// finitely presented families: meet semilattices, free simplices D(A), and
// rational polytopes conv(g_1, ..., g_k) in Q^d.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "duality/formal.hpp"
#include "duality/linalg.hpp"

namespace duality {

/// A point of a polytope together with the convex combination of generators
/// that certifies membership. Identity is by coordinates only.
struct HullPoint {
  linalg::Vec coords;
  Distribution<std::size_t> certificate;

  friend bool operator==(const HullPoint& a, const HullPoint& b) { return a.coords == b.coords; }
  friend std::strong_ordering operator<=>(const HullPoint& a, const HullPoint& b) {
    return std::lexicographical_compare_three_way(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                                  b.coords.end());
  }
};

using ConvexElement = std::variant<std::string, Distribution<std::string>, HullPoint>;

std::string render(const HullPoint& p);
std::string render(const ConvexElement& e);
json to_json(const ConvexElement& e);

/// Q>=0, the scalars of every convex algebra here.
const Semiring& rationals();

class ConvexAlgebra {
 public:
  enum class Family { semilattice, simplex, polytope };

  /// Validates associativity, commutativity and idempotence of `meet`.
  static ConvexAlgebra semilattice(std::string name, std::vector<std::string> elements,
                                   std::vector<std::vector<std::size_t>> meet);
  /// No law validation; for negative controls.
  static ConvexAlgebra semilattice_unchecked(std::string name, std::vector<std::string> elements,
                                             std::vector<std::vector<std::size_t>> meet);
  static ConvexAlgebra simplex(std::string name, std::vector<std::string> labels);
  static ConvexAlgebra polytope(std::string name, std::size_t dimension, std::vector<linalg::Vec> generators);

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] Family family() const;
  [[nodiscard]] std::string family_name() const;

  // Semilattice data.
  [[nodiscard]] const std::vector<std::string>& elements() const;
  [[nodiscard]] std::size_t index_of(const std::string& e) const;
  [[nodiscard]] std::size_t meet(std::size_t a, std::size_t b) const;
  [[nodiscard]] std::optional<std::size_t> top() const;

  // Simplex data.
  [[nodiscard]] const std::vector<std::string>& labels() const;

  // Polytope data.
  [[nodiscard]] std::size_t dimension() const;
  [[nodiscard]] const std::vector<linalg::Vec>& generator_points() const;

  /// Finite carrier (semilattices) versus infinite (simplices, polytopes).
  [[nodiscard]] bool is_finite() const { return family() == Family::semilattice; }

  /// Carrier elements of a semilattice, vertices of a simplex, generators of a polytope.
  [[nodiscard]] std::vector<ConvexElement> generators() const;
  [[nodiscard]] std::size_t generator_count() const;

  [[nodiscard]] bool contains(const ConvexElement& e) const;
  /// Throws ForeignElement unless `e` belongs to this algebra.
  void require(const ConvexElement& e) const;

  /// A polytope point, certified by an exact feasibility solve.
  [[nodiscard]] ConvexElement point(const linalg::Vec& coords) const;
  /// Exact membership certificate for `coords`, or nothing when outside.
  [[nodiscard]] std::optional<Distribution<std::size_t>> certify(const linalg::Vec& coords) const;

  /// The structure map alpha: D(X) -> X.
  [[nodiscard]] ConvexElement evaluate(const Distribution<ConvexElement>& phi) const;
  /// <r, x, y>, computed natively for each family.
  [[nodiscard]] ConvexElement ternary(const Rational& r, const ConvexElement& x, const ConvexElement& y) const;
  /// The recursive formula over an ordered term list: peel the first
  /// coefficient and rescale the tail by 1/(1 - r1).
  [[nodiscard]] ConvexElement evaluate_recursive(const std::vector<std::pair<Rational, ConvexElement>>& terms) const;
  [[nodiscard]] ConvexElement evaluate_recursive(const Distribution<ConvexElement>& phi) const;

  /// A random element; exhaustive callers should use `generators` instead.
  [[nodiscard]] ConvexElement sample(Rng& rng) const;

  friend bool operator==(const ConvexAlgebra& a, const ConvexAlgebra& b) { return a.impl_ == b.impl_; }

  struct Impl;

 private:
  explicit ConvexAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// {0, 1, 1/2, 1/3, 2/3, 1/4, 3/4} followed by 16 seeded rationals with
/// denominator at most 64, without repeats.
std::vector<Rational> default_scalar_grid(std::uint64_t seed = kDefaultSeed);

struct ConvexCheckOptions {
  std::vector<Rational> grid = default_scalar_grid();
  /// Element tuples for infinite carriers (and for finite ones above `exhaustive_limit`).
  std::size_t samples = 200;
  std::size_t exhaustive_limit = 5;
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::parallel;
};

/// Random distribution with 1..max_support terms drawn by `draw`.
template <class T, class Draw>
Distribution<T> random_distribution(Rng& rng, std::size_t max_support, Draw&& draw) {
  const std::size_t k = 1 + rng.below(max_support);
  std::vector<std::pair<Rational, T>> raw;
  std::vector<long> w(k);
  long total = 0;
  for (auto& x : w) total += (x = rng.between(1, 12));
  for (std::size_t i = 0; i < k; ++i) raw.emplace_back(Rational(w[i], total), draw());
  return Distribution<T>::normalize(rationals(), raw);
}

Report check_convex_axioms(const ConvexAlgebra& x, const ConvexCheckOptions& opt = {});
Report check_nested_tuple_identity(const ConvexAlgebra& x, const ConvexCheckOptions& opt = {});
/// evaluate versus evaluate_recursive on `count` seeded distributions, plus
/// permutation invariance of the recursive form.
Report check_evaluation_roundtrip(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed = kDefaultSeed,
                                  Exec exec = Exec::parallel);
/// alpha(sum_i r_i alpha(phi_i)) = alpha(mu(sum_i r_i phi_i)).
Report check_flattening(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed = kDefaultSeed,
                        Exec exec = Exec::parallel);

/// f(<r,x,x'>) = <r, f(x), f(x')> on grid scalars and element pairs from X
/// (all of them when finite, otherwise generators plus samples). `Target`
/// provides `ternary(r, a, b)`.
template <class Target, class F>
Report check_affine(const ConvexAlgebra& x, const Target& y, F&& f, const ConvexCheckOptions& opt = {}) {
  Report report(x.name(), "affine");
  std::vector<ConvexElement> pool = x.generators();
  if (!x.is_finite() || pool.size() > opt.exhaustive_limit) {
    Rng rng(opt.seed);
    for (std::size_t i = 0; i < opt.samples / 4 + 1; ++i) pool.push_back(x.sample(rng));
  }
  const std::size_t g = opt.grid.size(), p = pool.size();
  const std::size_t n = g * p * p;
  auto lhs = [&](std::size_t k) { return f(x.ternary(opt.grid[k / (p * p)], pool[k / p % p], pool[k % p])); };
  auto rhs = [&](std::size_t k) { return y.ternary(opt.grid[k / (p * p)], f(pool[k / p % p]), f(pool[k % p])); };
  const auto bad = kernels::first_failure(n, [&](std::size_t k) { return !(lhs(k) == rhs(k)); }, opt.exec);
  if (bad) {
    const std::size_t k = *bad;
    report.fail("preserves-ternary", "NotAffine",
                json{{"r", opt.grid[k / (p * p)].str()}, {"x", render(pool[k / p % p])}, {"x_prime", render(pool[k % p])},
                     {"lhs", render(lhs(k))}, {"rhs", render(rhs(k))}},
                k + 1);
  } else {
    report.pass("preserves-ternary", n);
  }
  return report;
}

}  // namespace duality
