#pragma once

// Finite effect algebras as partial sum tables, homomorphisms between them,
// products, coproducts and points.

#include <optional>
#include <string>
#include <vector>

#include "duality/kernels.hpp"
#include "duality/report.hpp"

namespace duality {

struct SumEntry {
  std::string x, y, z;
};

class EffectAlgebra {
 public:
  /// Builds the table from defined sums; each sum is entered symmetrically.
  /// Throws InvalidStructure on unknown elements or conflicting entries. The
  /// axioms are not checked here (see check_effect_axioms).
  static EffectAlgebra table(std::string name, std::vector<std::string> elements, const std::vector<SumEntry>& sums,
                             const std::string& zero, const std::string& one);

  /// {0, ..., M} with a + b defined when a + b <= M.
  static EffectAlgebra interval_nat(std::size_t m);
  /// Two elements 0 and 1.
  static EffectAlgebra two();
  /// One element, 0 = 1.
  static EffectAlgebra trivial();
  /// 0, p, p_perp, 1 with p + p_perp = 1.
  static EffectAlgebra mo2();
  /// Subsets of an n-element set with disjoint union (n <= 6).
  static EffectAlgebra powerset(std::size_t n);
  static EffectAlgebra product(const EffectAlgebra& e, const EffectAlgebra& d);
  /// Shared 0 and 1 plus inl(x), inr(y) for the remaining elements.
  static EffectAlgebra coproduct(const EffectAlgebra& e, const EffectAlgebra& d);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::string>& elements() const { return elements_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] std::size_t index_of(const std::string& e) const;
  [[nodiscard]] std::size_t zero() const { return zero_; }
  [[nodiscard]] std::size_t one() const { return one_; }
  [[nodiscard]] std::optional<std::size_t> sum(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }
  [[nodiscard]] bool orthogonal(std::size_t a, std::size_t b) const { return sum(a, b).has_value(); }
  /// All elements y with a + y = 1.
  [[nodiscard]] std::vector<std::size_t> complements(std::size_t a) const;
  /// The unique complement; AxiomViolation when there is none or several.
  [[nodiscard]] std::size_t ortho(std::size_t a) const;
  /// a <= b iff a + c = b for some c.
  [[nodiscard]] bool leq(std::size_t a, std::size_t b) const;
  /// Defined sums with x <= y by index, for serialization.
  [[nodiscard]] std::vector<SumEntry> sums() const;
  [[nodiscard]] EffectAlgebra renamed(std::string name) const;

 private:
  EffectAlgebra() = default;
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<std::optional<std::size_t>> table_;
  std::vector<std::vector<std::size_t>> complements_;
  std::size_t zero_ = 0, one_ = 0;
};

/// Commutativity, associativity, zero law, unique orthosupplements and
/// positivity, each exhaustively (TooLarge above 64 elements).
Report check_effect_axioms(const EffectAlgebra& e, Exec exec = Exec::parallel);

/// An element map E -> D by index.
using EAMap = std::vector<std::size_t>;

/// f(1) = 1 and x ⊥ y implies f(x) ⊥ f(y) with f(x + y) = f(x) + f(y).
Report check_ea_hom(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& f);
bool is_ea_hom(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& f);

/// All homomorphisms, lexicographic in the images. Each result is verified
/// to satisfy f(0) = 0 and f(x⊥) = f(x)⊥ (LawViolation otherwise).
std::vector<EAMap> enumerate_ea_homs(const EffectAlgebra& e, const EffectAlgebra& d, Exec exec = Exec::parallel);

/// Elements of E as homomorphisms MO2 -> E: for each hom, the image of p.
/// Throws LawViolation unless this is a bijection onto E.
std::vector<std::pair<std::size_t, EAMap>> points(const EffectAlgebra& e, Exec exec = Exec::parallel);

/// A bijective homomorphism whose inverse is a homomorphism.
std::optional<EAMap> find_isomorphism(const EffectAlgebra& e, const EffectAlgebra& d, Exec exec = Exec::parallel);

EAMap projection(const EffectAlgebra& e, const EffectAlgebra& d, int which);
EAMap injection(const EffectAlgebra& e, const EffectAlgebra& d, int which);

/// Projections are homs and every cone from each test algebra factors
/// through the product by exactly one hom.
Report check_product_universal(const EffectAlgebra& e, const EffectAlgebra& d, const std::vector<EffectAlgebra>& tests,
                               Exec exec = Exec::parallel);
/// Injections are homs and every cocone into each test algebra factors
/// through the coproduct by exactly one hom.
Report check_coproduct_universal(const EffectAlgebra& e, const EffectAlgebra& d,
                                 const std::vector<EffectAlgebra>& tests, Exec exec = Exec::parallel);

}  // namespace duality
