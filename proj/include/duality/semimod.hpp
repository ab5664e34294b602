#pragma once

// Semimodules over Q>=0 (algebras of the multiset monad) and the free
// semimodule F(X) = {0} + Q>0 x X on a convex algebra X, left adjoint to the
// forgetful functor into convex sets.

#include <functional>
#include <optional>
#include <variant>

#include "duality/convexalg.hpp"

namespace duality {

/// Zero, or a pair (s, x) with s != 0.
struct FElement {
  Rational scalar;
  std::optional<ConvexElement> base;

  static FElement zero() { return {}; }
  static FElement pair(const Rational& s, ConvexElement x);
  [[nodiscard]] bool is_zero() const { return !base.has_value(); }

  friend bool operator==(const FElement& a, const FElement& b) = default;
  friend std::strong_ordering operator<=>(const FElement& a, const FElement& b);
};

std::string render(const FElement& u);

/// Join-semilattice element, orthant vector, free multiset, or F(X) element.
using ModElement = std::variant<std::string, linalg::Vec, FormalSum<std::string>, FElement>;

std::string render(const linalg::Vec& v);
std::string render(const ModElement& m);

/// u + v in F(X): (s+t, <s/(s+t), x, y>) when both are pairs.
FElement f_add(const ConvexAlgebra& x, const FElement& u, const FElement& v);
/// s . u in F(X): zero when s = 0 or u = 0, else (s t, x).
FElement f_smul(const Rational& s, const FElement& u);

class Semimodule {
 public:
  enum class Variant { join_semilattice, nonneg_orthant, free_multiset, free_on_convex };

  /// `join` must be a join-semilattice table with a bottom element.
  static Semimodule join_semilattice(std::string name, std::vector<std::string> elements,
                                     std::vector<std::vector<std::size_t>> join);
  static Semimodule nonneg_orthant(std::size_t dimension);
  static Semimodule free_multiset(std::vector<std::string> labels);
  static Semimodule free_on_convex(ConvexAlgebra x);

  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] Variant variant() const;
  [[nodiscard]] std::string variant_name() const;

  [[nodiscard]] ModElement zero() const;
  [[nodiscard]] ModElement add(const ModElement& a, const ModElement& b) const;
  [[nodiscard]] ModElement smul(const Rational& s, const ModElement& a) const;
  [[nodiscard]] bool contains(const ModElement& a) const;
  /// <r, a, b> = r.a + (1-r).b, the convex structure of the underlying set.
  [[nodiscard]] ModElement ternary(const Rational& r, const ModElement& a, const ModElement& b) const;

  /// All elements when the carrier is finite.
  [[nodiscard]] std::optional<std::vector<ModElement>> elements() const;
  [[nodiscard]] ModElement sample(Rng& rng) const;

  // Variant data.
  [[nodiscard]] const std::vector<std::string>& labels() const;
  [[nodiscard]] std::size_t join_index(const std::string& e) const;
  [[nodiscard]] std::size_t join(std::size_t a, std::size_t b) const;
  [[nodiscard]] std::size_t bottom() const;
  [[nodiscard]] std::size_t dimension() const;
  [[nodiscard]] const ConvexAlgebra& base() const;

  struct Impl;

 private:
  explicit Semimodule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

using ModMap = std::function<ModElement(const ModElement&)>;
using AffineMap = std::function<ModElement(const ConvexElement&)>;

/// Operations under test; `standard` takes them from the semimodule.
struct SemimoduleOps {
  std::function<ModElement(const ModElement&, const ModElement&)> add;
  std::function<ModElement(const Rational&, const ModElement&)> smul;
  static SemimoduleOps standard(const Semimodule& m);
};

struct SemimodCheckOptions {
  std::size_t samples = 200;
  std::size_t exhaustive_limit = 5;
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::parallel;
};

/// Scalars used alongside samples: 0, 1, 1/2, 2, 3, 1/3, 5/2.
std::vector<Rational> semimodule_scalars();

Report check_semimodule_axioms(const Semimodule& m, const SemimodCheckOptions& opt = {});
Report check_semimodule_axioms(const Semimodule& m, const SemimoduleOps& ops, const SemimodCheckOptions& opt = {});
/// g(0) = 0, g(a + b) = g(a) + g(b), g(s.a) = s.g(a) on enumerated or sampled inputs.
Report check_semimodule_hom(const Semimodule& from, const Semimodule& to, const ModMap& g,
                            const SemimodCheckOptions& opt = {});

/// overline f(0) = 0, overline f(r, x) = r . f(x). Throws NotAffine unless f
/// passes the affine check into U(Y).
ModMap transpose_up(const ConvexAlgebra& x, const Semimodule& y, AffineMap f, const ConvexCheckOptions& opt = {});
/// overline g(x) = g(1, x). Throws NotHomomorphism unless g passes the hom check.
AffineMap transpose_down(const ConvexAlgebra& x, const Semimodule& y, ModMap g, const SemimodCheckOptions& opt = {});

/// A seeded affine map f: X -> U(Y) and an independently defined hom
/// g: F(X) -> Y for the same target.
struct TranspositionProbe {
  Semimodule target;
  AffineMap f;
  ModMap g;
  std::string description;
};

std::vector<TranspositionProbe> transposition_probes(const ConvexAlgebra& x, std::size_t count,
                                                     std::uint64_t seed = kDefaultSeed);

/// Both round trips, exact, on `count` seeded probes; every transpose is
/// verified as a morphism with a reduced grid and sample budget.
Report check_transposition(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed = kDefaultSeed,
                           Exec exec = Exec::parallel);

}  // namespace duality
