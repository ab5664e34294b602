#include "duality/linalg.hpp"

#include <stdexcept>

namespace duality::linalg {

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  }
  return acc;
}

Vec add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vec scale(const Rational& s, const Vec& a) {
  Vec out(a);
  for (auto& x : out) x = s * x;
  return out;
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Rref rref(Mat m, std::size_t cols) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Mat& m, std::size_t cols) { return rref(m, cols).pivots.size(); }

Mat null_space(const Mat& m, std::size_t cols) {
  const Rref r = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  Mat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(cols);
    v[f] = Rational(1);
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b, std::size_t cols) {
  Mat aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  const Rref r = rref(std::move(aug), cols + 1);
  Vec x = zeros(cols);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.pivots[i] == cols) return std::nullopt;
    x[r.pivots[i]] = r.rows[i][cols];
  }
  return x;
}

std::optional<Vec> feasible_nonneg(const Mat& a, const Vec& b, std::size_t cols) {
  const std::size_t m = a.size();
  const std::size_t n = cols + m;  // originals then artificials
  // Tableau rows: [coeffs | rhs]; artificial basis.
  Mat t(m, zeros(n + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool neg = b[i].sign() < 0;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = neg ? -a[i][j] : a[i][j];
    t[i][n] = neg ? -b[i] : b[i];
    t[i][cols + i] = Rational(1);
    basis[i] = cols + i;
  }
  // Reduced costs of minimizing the sum of artificials.
  Vec cost = zeros(n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (j < cols || j == n) cost[j] -= t[i][j];
    }
  }
  for (;;) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      const Rational ratio = t[i][n] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur for Phase I
    const Rational inv = t[leave][enter].inverse();
    for (auto& x : t[leave]) x = x * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[leave][j];
    }
    if (!cost[enter].is_zero()) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= n; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (!cost[n].is_zero()) return std::nullopt;
  Vec x = zeros(cols);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < cols) x[basis[i]] = t[i][n];
  }
  return x;
}

std::optional<Vec> find_feasible(const LinearSystem& sys) {
  // Free x splits as x+ - x-; each >= row gets a surplus variable.
  std::vector<bool> nonneg = sys.nonneg;
  nonneg.resize(sys.vars, false);
  std::vector<std::size_t> pos(sys.vars), negcol(sys.vars, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < sys.vars; ++v) {
    pos[v] = cols++;
    if (!nonneg[v]) negcol[v] = cols++;
  }
  const std::size_t surplus0 = cols;
  cols += sys.ge.size();
  Mat a;
  Vec b;
  auto expand = [&](const Vec& coeffs) {
    Vec row = zeros(cols);
    for (std::size_t v = 0; v < sys.vars; ++v) {
      row[pos[v]] = coeffs[v];
      if (negcol[v] != SIZE_MAX) row[negcol[v]] = -coeffs[v];
    }
    return row;
  };
  for (const auto& [coeffs, rhs] : sys.eq) {
    a.push_back(expand(coeffs));
    b.push_back(rhs);
  }
  for (std::size_t k = 0; k < sys.ge.size(); ++k) {
    Vec row = expand(sys.ge[k].first);
    row[surplus0 + k] = Rational(-1);
    a.push_back(std::move(row));
    b.push_back(sys.ge[k].second);
  }
  const auto y = feasible_nonneg(a, b, cols);
  if (!y) return std::nullopt;
  Vec x = zeros(sys.vars);
  for (std::size_t v = 0; v < sys.vars; ++v) {
    x[v] = (*y)[pos[v]];
    if (negcol[v] != SIZE_MAX) x[v] -= (*y)[negcol[v]];
  }
  return x;
}

}  // namespace duality::linalg
