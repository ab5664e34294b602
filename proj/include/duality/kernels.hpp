#pragma once

// Data-parallel scan kernels. Every checker in the library reduces to "find the
// least failing case index" or "collect per-case results in index order"; the
// serial variants are the reference the OpenMP variants are tested against.

#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace duality {

enum class Exec { serial, parallel };

namespace kernels {

template <class Fails>
std::optional<std::size_t> first_failure_serial(std::size_t n, Fails&& fails) {
  for (std::size_t i = 0; i < n; ++i) {
    if (fails(i)) return i;
  }
  return std::nullopt;
}

/// Least index i in [0, n) with fails(i); identical result to the serial scan,
/// including which exception escapes when a case throws.
template <class Fails>
std::optional<std::size_t> first_failure_parallel(std::size_t n, Fails&& fails) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;
  std::size_t error_index = none;
  std::exception_ptr error;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 32) reduction(min : best)
  for (long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx >= best) continue;
    try {
      if (fails(idx)) best = idx;
    } catch (...) {
#pragma omp critical(duality_kernel_error)
      if (idx < error_index) {
        error_index = idx;
        error = std::current_exception();
      }
    }
  }
  if (error && error_index < best) std::rethrow_exception(error);
  if (best == none) return std::nullopt;
  return best;
}

template <class Fails>
std::optional<std::size_t> first_failure(std::size_t n, Fails&& fails, Exec exec) {
  return exec == Exec::serial ? first_failure_serial(n, fails) : first_failure_parallel(n, fails);
}

/// Evaluates produce(i) for every i and keeps engaged results in index order.
template <class T, class Produce>
std::vector<T> gather(std::size_t n, Produce&& produce, Exec exec) {
  std::vector<std::optional<T>> slots(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) slots[i] = produce(i);
  } else {
    std::exception_ptr error;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        slots[idx] = produce(idx);
      } catch (...) {
#pragma omp critical(duality_kernel_error)
        if (idx < error_index) {
          error_index = idx;
          error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
  }
  std::vector<T> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

/// Enumerates assignments of `candidates` values to positions 0..n-1 in
/// lexicographic order; `consistent(assign, i)` sees positions 0..i filled.
/// The first position is split across threads.
template <class Consistent>
std::vector<std::vector<std::size_t>> backtrack(std::size_t n, std::size_t candidates, Consistent&& consistent,
                                                Exec exec) {
  if (n == 0) return {{}};
  auto chunks = gather<std::vector<std::vector<std::size_t>>>(
      candidates,
      [&](std::size_t first) -> std::optional<std::vector<std::vector<std::size_t>>> {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> assign(n);
        assign[0] = first;
        if (!consistent(assign, 0)) return out;
        std::size_t i = 1;
        if (n == 1) {
          out.push_back(assign);
          return out;
        }
        assign[1] = 0;
        while (i > 0) {
          if (assign[i] >= candidates) {
            --i;
            if (i > 0) ++assign[i];
            continue;
          }
          if (consistent(assign, i)) {
            if (i + 1 == n) {
              out.push_back(assign);
              ++assign[i];
            } else {
              ++i;
              assign[i] = 0;
            }
          } else {
            ++assign[i];
          }
        }
        return out;
      },
      exec);
  std::vector<std::vector<std::size_t>> all;
  for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
  return all;
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace duality
