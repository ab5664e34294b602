#pragma once

// States of finite effect algebras as exact rational polytopes, the effect
// algebra of [0,1]-valued affine functionals on a convex algebra, and the
// unit and counit of the adjunction between them.

#include "duality/convexalg.hpp"
#include "duality/effectalg.hpp"
#include "duality/linalg.hpp"

namespace duality {

/// A constraint a.f = b (kind "eq") or a.f >= b (kind "ge"), named for reports.
struct StateConstraint {
  std::string name;
  std::string kind;
  linalg::Vec coeffs;
  Rational rhs;
};

struct ExtremeState {
  linalg::Vec values;  // indexed by the elements of E
  /// Names of the bound constraints tight at this vertex; their rank together
  /// with the equalities is the number of variables.
  std::vector<std::string> tight;
  std::size_t rank = 0;
  friend bool operator==(const ExtremeState& a, const ExtremeState& b) { return a.values == b.values; }
};

struct StateSpace {
  EffectAlgebra source;
  std::vector<StateConstraint> constraints;
  /// Dimension of the affine hull of the equalities (0 when a single point).
  std::size_t freedom = 0;
  bool feasible = false;
  /// Sorted by value vector.
  std::vector<ExtremeState> extremes;
};

/// Constraint system and exact vertex enumeration over tight bound subsets.
/// TooLarge when more than 5,000,000 candidate subsystems would be tried.
StateSpace state_space(const EffectAlgebra& e, Exec exec = Exec::parallel);

/// f(1) = 1, f(0) = 0, additivity and bounds, checked exactly.
Report check_state(const EffectAlgebra& e, const linalg::Vec& f);
bool is_state(const EffectAlgebra& e, const linalg::Vec& f);

/// sum_i r_i f_i; the weights must be a distribution and the f_i states of E.
linalg::Vec convex_mix_states(const EffectAlgebra& e, const std::vector<std::pair<Rational, linalg::Vec>>& mix);

/// f o g for a homomorphism g: E -> D and a state f of D.
linalg::Vec state_precompose(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& g, const linalg::Vec& f);

/// Every extreme state is a state, seeded mixes are states, and mixing
/// commutes with precomposition along every homomorphism from `sources`.
Report check_state_space(const StateSpace& s, const std::vector<EffectAlgebra>& sources, std::size_t mixes = 40,
                         std::uint64_t seed = kDefaultSeed, Exec exec = Exec::parallel);

/// The state space of E as a polytope in Q^|E| generated by its extreme states.
ConvexAlgebra state_polytope(const StateSpace& s);

/// Affine maps X -> [0,1] for a simplex or polytope with at most 8
/// generators, represented by their values on the generators.
class AffineFunctionalAlgebra {
 public:
  explicit AffineFunctionalAlgebra(ConvexAlgebra x);

  [[nodiscard]] const ConvexAlgebra& base() const { return x_; }
  [[nodiscard]] std::size_t arity() const { return x_.generator_count(); }
  /// Affine dependencies among generators: sum l_i g_i = 0 with sum l_i = 0.
  [[nodiscard]] const linalg::Mat& dependencies() const { return deps_; }

  /// Validates range (ScalarOutOfRange) and dependencies (DependentGeneratorsUnsatisfiable).
  [[nodiscard]] linalg::Vec make(linalg::Vec values) const;
  [[nodiscard]] linalg::Vec zero() const;
  [[nodiscard]] linalg::Vec one() const;
  /// Pointwise sum stays in [0,1]; checking the generators suffices.
  [[nodiscard]] bool defined(const linalg::Vec& f, const linalg::Vec& g) const;
  [[nodiscard]] std::optional<linalg::Vec> sum(const linalg::Vec& f, const linalg::Vec& g) const;
  [[nodiscard]] linalg::Vec ortho(const linalg::Vec& f) const;
  [[nodiscard]] bool leq(const linalg::Vec& f, const linalg::Vec& g) const;
  /// f at an arbitrary element, through its presentation.
  [[nodiscard]] Rational value(const linalg::Vec& f, const ConvexElement& x) const;
  /// f⊥ at x = sum r_i x_i computed as sum r_i (1 - f(x_i)).
  [[nodiscard]] Rational ortho_value(const linalg::Vec& f, const Distribution<ConvexElement>& phi) const;
  [[nodiscard]] linalg::Vec sample(Rng& rng) const;

 private:
  ConvexAlgebra x_;
  linalg::Mat deps_;
};

/// Commutativity, associativity, zero law, orthosupplement and positivity on
/// seeded functionals plus 0, 1 and the generator indicators when free.
Report check_functional_effect_axioms(const AffineFunctionalAlgebra& a, std::size_t samples = 60,
                                      std::uint64_t seed = kDefaultSeed);

/// eta(x): the evaluation functional x |-> (f |-> f(x)) on the state space,
/// by its values on the extreme states.
linalg::Vec unit_eta(const StateSpace& s, std::size_t x);
/// eta(1) = 1, eta(0) = 0 and eta additive on every defined sum, with values
/// in [0,1] and every eta(x) a valid functional on the state polytope.
Report check_unit_eta(const StateSpace& s);

/// epsilon(x)(f) = f(x).
Rational counit_epsilon(const AffineFunctionalAlgebra& a, const ConvexElement& x, const linalg::Vec& f);
/// epsilon(x) is a state on sampled functionals, and epsilon is affine:
/// epsilon(alpha(phi)) = sum r_i epsilon(x_i) on sampled phi and f.
Report check_counit_epsilon(const AffineFunctionalAlgebra& a, std::size_t samples = 40,
                            std::uint64_t seed = kDefaultSeed);

/// S(eta_E) o epsilon_S(E) = id on states of E (vertices and seeded mixes),
/// and A(epsilon_X) o eta_A(X) = id on seeded functionals of X.
Report check_triangle_identities(const StateSpace& s, const AffineFunctionalAlgebra& a, std::size_t samples = 20,
                                 std::uint64_t seed = kDefaultSeed);

/// Functionals on Simplex(A), |A| <= 6, against the power [0,1]^A:
/// definedness, sum, orthosupplement, 0 and 1 agree componentwise.
Report composed_adjunction_check(const std::vector<std::string>& labels, std::size_t samples = 200,
                                 std::uint64_t seed = kDefaultSeed);

/// For every q <= max_den the states of {0, 1/q, ..., 1} reduce to f(p/q) = p/q.
Report check_unique_interval_state(std::size_t max_den = 24);

json to_json(const StateSpace& s);

}  // namespace duality
