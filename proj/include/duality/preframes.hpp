#pragma once

// Finite preframes, their Scott-open filters, and the dual adjunction between
// convex algebras and preframes given by swapping arguments.

#include <functional>

#include "duality/faces.hpp"

namespace duality {

class FinitePreframe {
 public:
  /// Reflexive-transitive closure of `pairs` (a <= b). Throws InvalidStructure
  /// when the closure is not antisymmetric or lacks binary meets or a top.
  static FinitePreframe from_order(std::string name, std::vector<std::string> elements,
                                   const std::vector<std::pair<std::string, std::string>>& pairs);
  /// Order given as a full matrix leq[i][j].
  static FinitePreframe from_leq(std::string name, std::vector<std::string> elements,
                                 std::vector<std::vector<bool>> leq);
  static FinitePreframe chain(std::size_t n);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::string>& elements() const { return elements_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] std::size_t index_of(const std::string& e) const;
  [[nodiscard]] bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  [[nodiscard]] std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  [[nodiscard]] std::size_t top() const { return top_; }
  /// Order pairs of the covering relation, for serialization.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> covers() const;

  /// The greatest element of `d` when `d` is a nonempty directed subset.
  [[nodiscard]] std::optional<std::size_t> directed_join(Mask d) const;

 private:
  FinitePreframe() = default;
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_;
  std::size_t top_ = 0;
};

/// Partial order, meets, top and distributivity over directed families
/// (every directed subset when the carrier has at most 10 elements, sampled otherwise).
Report check_preframe_axioms(const FinitePreframe& l, std::uint64_t seed = kDefaultSeed);

/// Upward-closed, meet-closed subsets containing top, sorted by mask.
std::vector<Mask> scott_open_filters(const FinitePreframe& l, Exec exec = Exec::parallel);

/// Indicators of the filters preserve top, binary meets and every directed
/// join; they are exactly the preframe maps L -> {0,1}.
Report check_scott_filters(const FinitePreframe& l, Exec exec = Exec::parallel);

/// "{a,b}" style name of a subset.
std::string subset_name(const std::vector<std::string>& names, Mask m);

/// Hom(L,{0,1}) as a meet semilattice: the filters under intersection.
ConvexAlgebra hom_set_algebra(const FinitePreframe& l);

/// Hom(X,{0,1}) with the pointwise order, as a finite preframe.
FinitePreframe hom_preframe(const ConvexAlgebra& x, Exec exec = Exec::parallel);

using ConvexMap = std::function<ConvexElement(const ConvexElement&)>;

/// A preframe map L -> Hom(X,{0,1}), one affine map per element of L.
struct PreframeMap {
  std::vector<TwoValuedMap> images;
  friend bool operator==(const PreframeMap&, const PreframeMap&) = default;
};

/// Preserves top and binary meets, and every image is an affine map on X.
Report check_preframe_map(const ConvexAlgebra& x, const FinitePreframe& l, const PreframeMap& g,
                          Exec exec = Exec::parallel);

/// g(a)(x) = f(x)(a). `f` must be affine X -> hom_set_algebra(L) (NotAffine);
/// the result is checked to be a preframe map (NotPreframeMap).
PreframeMap pf_transpose(const ConvexAlgebra& x, const FinitePreframe& l, const ConvexMap& f,
                         const ConvexCheckOptions& opt = {});
/// f(x) = {a : g(a)(x) = 1}, checked affine.
ConvexMap pf_transpose_inverse(const ConvexAlgebra& x, const FinitePreframe& l, const PreframeMap& g,
                               const ConvexCheckOptions& opt = {});

/// Every preframe map L -> Hom(X,{0,1}).
std::vector<PreframeMap> enumerate_preframe_maps(const ConvexAlgebra& x, const FinitePreframe& l,
                                                 Exec exec = Exec::parallel);
/// Every affine map X -> Hom(L,{0,1}), by its values on the presentation
/// (carrier elements or simplex vertices). Polytopes are not supported.
std::vector<std::vector<std::size_t>> enumerate_affine_to_homset(const ConvexAlgebra& x, const FinitePreframe& l,
                                                                 Exec exec = Exec::parallel);
/// The affine map with the given values on the presentation.
ConvexMap affine_from_values(const ConvexAlgebra& x, const FinitePreframe& l, const std::vector<std::size_t>& values);

/// Both hom-sets enumerated, equal sizes, both round trips identities, and
/// every transpose a morphism of its category.
Report check_pf_adjunction(const ConvexAlgebra& x, const FinitePreframe& l, Exec exec = Exec::parallel);

}  // namespace duality
