#pragma once

// Subalgebras, filters and prime filters of convex algebras, and the order
// isomorphism between prime filters and affine maps into {0,1} (taken with
// its meet-semilattice convex structure).

#include <cstdint>
#include <vector>

#include "duality/convexalg.hpp"

namespace duality {

/// A subset encoded as a bitmask: carrier indices for semilattices, generator
/// indices for simplices and polytopes (the face spanned by them).
using Mask = std::uint64_t;

inline bool mask_has(Mask m, std::size_t i) { return (m >> i) & 1U; }
inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// Names of the members of `mask` (carrier elements or generator labels).
std::vector<std::string> mask_names(const ConvexAlgebra& x, Mask mask);
json mask_json(const ConvexAlgebra& x, Mask mask);
Mask mask_of(const ConvexAlgebra& x, const std::vector<std::string>& names);

/// Membership of an element in the subset described by `mask`. For polytopes
/// this is membership in the convex hull of the selected generators.
bool in_subset(const ConvexAlgebra& x, Mask mask, const ConvexElement& e);

/// Least subalgebra containing the selected elements (semilattices only).
Mask subalgebra_closure(const ConvexAlgebra& x, Mask generators);

struct FilterVerdict {
  bool subalgebra = true;
  bool filter = true;
  /// Failing distribution and the offending element, when a condition fails.
  json witness;
  /// Polytopes only: whether an exact separating functional exists.
  std::optional<bool> face_certificate;
  [[nodiscard]] bool prime() const { return subalgebra && filter; }
};

/// Checks both defining conditions directly: exhaustively over supports of
/// size <= 3 with grid weights for semilattices, on generators, midpoints and
/// seeded points for simplices and polytopes.
FilterVerdict is_prime_filter(const ConvexAlgebra& x, Mask mask, const ConvexCheckOptions& opt = {});

/// A linear functional c and level d with c.g = d on the selected generators
/// and c.g >= d + 1 on the rest, if one exists.
std::optional<std::pair<linalg::Vec, Rational>> face_certificate(const ConvexAlgebra& x, Mask mask);

/// All prime filters sorted by mask. Throws TooLarge beyond 16 carrier
/// elements, 16 simplex vertices or 8 polytope generators.
std::vector<Mask> enumerate_prime_filters(const ConvexAlgebra& x, Exec exec = Exec::parallel);

std::vector<ConvexElement> extreme_points(const ConvexAlgebra& x, Exec exec = Exec::parallel);

/// An affine map X -> {0,1}, stored by its values on carrier elements or
/// generators (bit set = value 1).
struct TwoValuedMap {
  Mask ones = 0;
  friend bool operator==(const TwoValuedMap&, const TwoValuedMap&) = default;
};

/// Value at an arbitrary element: the meet of the values on the support of
/// its presentation (semilattice index, simplex support, polytope certificate).
int apply(const ConvexAlgebra& x, const TwoValuedMap& f, const ConvexElement& e);

/// Every affine map X -> {0,1}, found without reference to filters: meet
/// preservation on finite carriers, free extension on simplices, and an
/// infeasible "bad point" LP on polytopes. Sorted by `ones`.
std::vector<TwoValuedMap> hom_to_two(const ConvexAlgebra& x, Exec exec = Exec::parallel);

/// True kernel f^{-1}(1).
Mask filter_of(const ConvexAlgebra& x, const TwoValuedMap& f);
/// Indicator of a prime filter.
TwoValuedMap map_of(const ConvexAlgebra& x, Mask filter);

/// Bijection, both composites, and the order isomorphism between
/// enumerate_prime_filters and hom_to_two.
Report check_filter_duality(const ConvexAlgebra& x, Exec exec = Exec::parallel);

}  // namespace duality
