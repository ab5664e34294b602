#pragma once

// Exact linear algebra over Q: row reduction, null spaces, and a Phase I
// simplex (Bland's rule) for feasibility of linear systems.

#include <optional>
#include <vector>

#include "duality/rational.hpp"

namespace duality::linalg {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& s, const Vec& a);
Vec zeros(std::size_t n);

struct Rref {
  Mat rows;                     // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form; `cols` is needed when `m` has no rows.
Rref rref(Mat m, std::size_t cols);
std::size_t rank(const Mat& m, std::size_t cols);

/// Basis of {x : m x = 0}, one vector per free column, in column order.
Mat null_space(const Mat& m, std::size_t cols);

/// Some x with a x = b, or nothing when inconsistent. Free variables are zero.
std::optional<Vec> solve(const Mat& a, const Vec& b, std::size_t cols);

/// A linear feasibility problem: equalities a.x = b and inequalities
/// a.x >= b; variables are free unless listed in `nonneg`.
struct LinearSystem {
  std::size_t vars = 0;
  std::vector<std::pair<Vec, Rational>> eq;
  std::vector<std::pair<Vec, Rational>> ge;
  std::vector<bool> nonneg;
};

/// Some exact feasible point, or nothing when the system is infeasible.
std::optional<Vec> find_feasible(const LinearSystem& sys);

/// Some x >= 0 with a x = b (Phase I simplex, Bland's rule).
std::optional<Vec> feasible_nonneg(const Mat& a, const Vec& b, std::size_t cols);

}  // namespace duality::linalg
