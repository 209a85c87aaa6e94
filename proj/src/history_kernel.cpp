#include "fracmal/history_kernel.hpp"

#include <cstdint>
#include <vector>

namespace fracmal {

namespace {

// Block length of the deterministic parallel reduction; windows shorter than
// kParallelCutoff run serially even under HistoryKernel::OpenMP. The cutoff
// has to cover a full fork-join (tens of microseconds on oversubscribed
// hosts), so only genuinely long history windows go parallel; measured
// crossover on a 2-core host sits near 4e4 lags.
constexpr std::size_t kBlock = 2048;
constexpr std::size_t kParallelCutoff = 40960;

// One pass over j in [lo, hi), accumulating both weighted sums for every
// component. Loading the weight pair once per j keeps the memory traffic at
// (dim + 2) doubles per term; the i-major alternative re-streams the weight
// arrays for every component, which is what the O(N^2) loop cannot afford.
template <int Dim>
void dual_dot_block(const double* hist, std::size_t stride, std::size_t lo, std::size_t hi,
                    std::size_t top, const double* wa, const double* wb,
                    double* acc_a, double* acc_b) {
    double sa[Dim] = {}, sb[Dim] = {};
    for (std::size_t j = lo; j < hi; ++j) {
        const double va = wa[top - j];
        const double vb = wb[top - j];
        for (int i = 0; i < Dim; ++i) {
            const double x = hist[static_cast<std::size_t>(i) * stride + j];
            sa[i] += va * x;
            sb[i] += vb * x;
        }
    }
    for (int i = 0; i < Dim; ++i) {
        acc_a[i] = sa[i];
        acc_b[i] = sb[i];
    }
}

void dual_dot_block_n(const double* hist, std::size_t stride, std::size_t dim,
                      std::size_t lo, std::size_t hi, std::size_t top,
                      const double* wa, const double* wb, double* acc_a, double* acc_b) {
    for (std::size_t i = 0; i < dim; ++i) acc_a[i] = acc_b[i] = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
        const double va = wa[top - j];
        const double vb = wb[top - j];
        for (std::size_t i = 0; i < dim; ++i) {
            const double x = hist[i * stride + j];
            acc_a[i] += va * x;
            acc_b[i] += vb * x;
        }
    }
}

void dispatch_block(const double* hist, std::size_t stride, std::size_t dim,
                    std::size_t lo, std::size_t hi, std::size_t top,
                    const double* wa, const double* wb, double* acc_a, double* acc_b) {
    switch (dim) {
        case 1: dual_dot_block<1>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 2: dual_dot_block<2>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 3: dual_dot_block<3>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 4: dual_dot_block<4>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 5: dual_dot_block<5>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 6: dual_dot_block<6>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 7: dual_dot_block<7>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        case 8: dual_dot_block<8>(hist, stride, lo, hi, top, wa, wb, acc_a, acc_b); break;
        default: dual_dot_block_n(hist, stride, dim, lo, hi, top, wa, wb, acc_a, acc_b); break;
    }
}

} // namespace

void dual_lag_sum(const double* hist, std::size_t stride, std::size_t dim,
                  std::size_t lo, std::size_t hi,
                  const double* wa, const double* wb,
                  double* out_a, double* out_b,
                  HistoryKernel kernel) {
    if (lo >= hi) {
        for (std::size_t i = 0; i < dim; ++i) out_a[i] = out_b[i] = 0.0;
        return;
    }

    const std::size_t top = hi - 1;
    const std::size_t window = hi - lo;
    if (kernel == HistoryKernel::Serial || window < kParallelCutoff) {
        dispatch_block(hist, stride, dim, lo, hi, top, wa, wb, out_a, out_b);
        return;
    }

    // Blocked reduction: block boundaries depend only on the window, not on
    // the thread count, and partials are folded in block order, so results
    // are reproducible for any OMP_NUM_THREADS.
    const std::size_t n_blocks = (window + kBlock - 1) / kBlock;
    std::vector<double> partials(2 * dim * n_blocks);

    const auto jobs = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < jobs; ++b) {
        const std::size_t b_lo = lo + static_cast<std::size_t>(b) * kBlock;
        const std::size_t b_hi = b_lo + kBlock < hi ? b_lo + kBlock : hi;
        double* part = partials.data() + 2 * dim * static_cast<std::size_t>(b);
        dispatch_block(hist, stride, dim, b_lo, b_hi, top, wa, wb, part, part + dim);
    }

    for (std::size_t i = 0; i < dim; ++i) out_a[i] = out_b[i] = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const double* part = partials.data() + 2 * dim * b;
        for (std::size_t i = 0; i < dim; ++i) {
            out_a[i] += part[i];
            out_b[i] += part[dim + i];
        }
    }
}

void lag_sum(const double* hist, std::size_t stride, std::size_t dim,
             std::size_t lo, std::size_t hi,
             const double* w, double* out, HistoryKernel kernel) {
    std::vector<double> scratch(dim);
    dual_lag_sum(hist, stride, dim, lo, hi, w, w, out, scratch.data(), kernel);
}

} // namespace fracmal
