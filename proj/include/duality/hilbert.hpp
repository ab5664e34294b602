#pragma once

// Subspaces of Q^n with the standard inner product: the orthomodular lattice
// they form, finite effect algebras of subspaces, and the state a |-> ||P_K a||^2.

#include "duality/effectalg.hpp"
#include "duality/linalg.hpp"
#include "duality/rng.hpp"

namespace duality {

/// A subspace of Q^n stored by its reduced row echelon basis, so equal
/// subspaces have equal representations.
class RationalSubspace {
 public:
  static RationalSubspace span(std::size_t n, const linalg::Mat& vectors);
  static RationalSubspace zero(std::size_t n) { return span(n, {}); }
  static RationalSubspace full(std::size_t n);
  /// span{e_i}.
  static RationalSubspace axis(std::size_t n, std::size_t i);

  [[nodiscard]] std::size_t ambient() const { return n_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const linalg::Mat& basis() const { return basis_; }
  [[nodiscard]] bool contains(const linalg::Vec& v) const;
  /// "0", "Q^n" or "span{(1,0),(0,1)}".
  [[nodiscard]] std::string name() const;

  friend bool operator==(const RationalSubspace&, const RationalSubspace&) = default;
  /// Dimension first, then basis.
  friend std::strong_ordering operator<=>(const RationalSubspace& a, const RationalSubspace& b);

 private:
  std::size_t n_ = 0;
  linalg::Mat basis_;
};

RationalSubspace sub_meet(const RationalSubspace& k, const RationalSubspace& m);
RationalSubspace sub_join(const RationalSubspace& k, const RationalSubspace& m);
RationalSubspace sub_ortho(const RationalSubspace& k);
bool sub_leq(const RationalSubspace& k, const RationalSubspace& m);
/// k <= m^perp.
bool sub_orthogonal(const RationalSubspace& k, const RationalSubspace& m);

/// A vector with <a,a> = 1 exactly.
class UnitVector {
 public:
  /// Throws ScalarOutOfRange unless the squared norm is exactly 1.
  static UnitVector make(linalg::Vec coords);
  [[nodiscard]] const linalg::Vec& coords() const { return v_; }

 private:
  linalg::Vec v_;
};

/// Rational points of the unit sphere in Q^n by inverse stereographic
/// projection of t in Q^(n-1): (2t, |t|^2 - 1) / (|t|^2 + 1).
UnitVector sphere_point(const linalg::Vec& t);
UnitVector random_unit_vector(std::size_t n, Rng& rng);
RationalSubspace random_subspace(std::size_t n, Rng& rng);

/// ||P_K v||^2 from the normal equations over the basis of K.
Rational projection_norm_sq(const linalg::Vec& v, const RationalSubspace& k);
inline Rational projection_norm_sq(const UnitVector& a, const RationalSubspace& k) {
  return projection_norm_sq(a.coords(), k);
}

struct SubspaceFamily {
  std::size_t ambient = 0;
  std::vector<RationalSubspace> members;  // sorted
  EffectAlgebra algebra;
};

/// Closes the generators (plus 0 and Q^n) under meets, orthocomplements and
/// joins of orthogonal pairs, and tabulates k + m = k v m for orthogonal k, m.
/// ClosureTooLarge beyond `cap` members.
SubspaceFamily ksub_effect_algebra(std::size_t n, const std::vector<RationalSubspace>& generators,
                                   std::size_t cap = 64);

/// k |-> ||P_k a||^2 over the family, indexed like its members.
linalg::Vec epsilon_state(const UnitVector& a, const SubspaceFamily& fam);
/// eps(0) = 0, eps(1) = 1, additive on every defined sum, monotone on every
/// comparable pair (HomViolation).
Report check_epsilon_state(const UnitVector& a, const SubspaceFamily& fam);

/// Lattice laws on sampled triples, ortho involutive and order-reversing,
/// complements, the orthomodular law on sampled comparable pairs, and
/// ||P_K a||^2 + ||P_K^perp a||^2 = 1.
Report check_subspace_lattice(std::size_t n, std::size_t samples = 500, std::uint64_t seed = kDefaultSeed,
                              Exec exec = Exec::parallel);

struct ConvexityWitness {
  linalg::Vec a, b, mix;
  Rational lambda;
  RationalSubspace k;
  Rational at_mix;     // ||P_K (l a + (1-l) b)||^2
  Rational mixed;      // l ||P_K a||^2 + (1-l) ||P_K b||^2
  bool mix_is_unit = false;
};

/// lambda-mix discrepancy data for given inputs (no search).
ConvexityWitness convexity_probe(const UnitVector& a, const UnitVector& b, const Rational& lambda,
                                 const RationalSubspace& k);
/// First witness in a fixed search order over rational unit vectors of Q^n,
/// weights and coordinate or diagonal lines, for which at_mix != mixed.
ConvexityWitness convexity_counterexample(std::size_t n = 2);
json to_json(const ConvexityWitness& w);

}  // namespace duality
