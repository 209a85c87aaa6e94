#pragma once

#include <cstddef>
#include <span>

namespace fracmal {

/// Kernel used for the O(N^2) memory-term sums inside solve().
enum class HistoryKernel { Serial, OpenMP };

/// Dual lag-weighted reduction over a window of derivative history.
///
/// For each component i < dim, with column x = hist + i*stride:
///   out_a[i] = sum_{j=lo}^{hi-1} wa[hi-1-j] * x[j]
///   out_b[i] = sum_{j=lo}^{hi-1} wb[hi-1-j] * x[j]
///
/// Both sums share one pass over the history columns. The OpenMP variant
/// reduces over fixed-size blocks combined in index order, so the result is
/// identical for any thread count. Empty windows (lo >= hi) yield zeros.
void dual_lag_sum(const double* hist, std::size_t stride, std::size_t dim,
                  std::size_t lo, std::size_t hi,
                  const double* wa, const double* wb,
                  double* out_a, double* out_b,
                  HistoryKernel kernel);

/// Single-weight form of dual_lag_sum, for tests and benchmarks.
void lag_sum(const double* hist, std::size_t stride, std::size_t dim,
             std::size_t lo, std::size_t hi,
             const double* w, double* out, HistoryKernel kernel);

} // namespace fracmal
