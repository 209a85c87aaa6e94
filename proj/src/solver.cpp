#include "fracmal/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fracmal {

namespace {

void check_inputs(const SystemFunction& f, std::span<const double> y0) {
    if (!f.eval) throw std::invalid_argument("solve: system has no eval function");
    if (f.dimension == 0) throw std::invalid_argument("solve: system dimension must be positive");
    if (y0.size() != f.dimension)
        throw std::invalid_argument("solve: initial state length does not match system dimension");
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

Trajectory solve(const SystemFunction& f, std::span<const double> y0,
                 FractionalOrder order, TimeGrid grid, const SolveOptions& opts) {
    check_inputs(f, y0);

    const std::size_t dim = f.dimension;
    const std::size_t n = grid.n_steps();
    const double h = grid.h();
    const double a = order.alpha();
    const double inv_gamma = 1.0 / std::tgamma(a);

    // Power tables: P[m] = m^a, Q[m] = m^(a+1), m = 0..n+1.
    std::vector<double> pow_a(n + 2), pow_a1(n + 2);
    for (std::size_t m = 0; m <= n + 1; ++m) {
        const double md = static_cast<double>(m);
        pow_a[m] = std::pow(md, a);
        pow_a1[m] = std::pow(md, a + 1.0);
    }

    const double pre_b = std::pow(h, a) / a;
    const double pre_c = std::pow(h, a) / (a * (a + 1.0));

    // Lag-indexed weights: bw[m] = b_{j,k+1} and cw[m] = a_{j,k+1} (interior
    // case) at lag m = k-j. The j = 0 corrector weight depends on k alone and
    // is formed per step below.
    std::vector<double> bw(n), cw(n);
    for (std::size_t m = 0; m < n; ++m) {
        bw[m] = pre_b * (pow_a[m + 1] - pow_a[m]);
        cw[m] = pre_c * (pow_a1[m + 2] + pow_a1[m] - 2.0 * pow_a1[m + 1]);
    }

    // Derivative history, column-major: component i lives at fh[i*(n+1) + j].
    const std::size_t stride = n + 1;
    std::vector<double> fh(dim * stride);
    std::vector<double> pred(dim), corr(dim), fval(dim), sum_p(dim), sum_c(dim);

    Trajectory traj(grid, order, dim);
    traj.append(y0);

    f.eval(0.0, y0, fval);
    for (std::size_t i = 0; i < dim; ++i) fh[i * stride] = fval[i];

    for (std::size_t k = 0; k < n; ++k) {
        const double t_next = grid.time(k + 1);

        // History window j = 1..k fused for both sums; j = 0 added explicitly.
        dual_lag_sum(fh.data(), stride, dim, 1, k + 1, bw.data(), cw.data(),
                     sum_p.data(), sum_c.data(), opts.kernel);

        const double kd = static_cast<double>(k);
        const double a0k = pre_c * (pow_a1[k] - (kd - a) * pow_a[k + 1]);
        for (std::size_t i = 0; i < dim; ++i) {
            const double f0 = fh[i * stride];
            sum_p[i] += bw[k] * f0;
            sum_c[i] += a0k * f0;
            pred[i] = y0[i] + inv_gamma * sum_p[i];
        }
        if (!all_finite(pred)) throw NonFiniteStateError(k + 1, "predictor diverged");

        f.eval(t_next, pred, fval);
        for (std::size_t i = 0; i < dim; ++i)
            corr[i] = y0[i] + inv_gamma * (sum_c[i] + pre_c * fval[i]);
        if (!all_finite(corr)) throw NonFiniteStateError(k + 1, "corrector diverged");

        traj.append(corr);
        f.eval(t_next, corr, fval);
        for (std::size_t i = 0; i < dim; ++i) fh[i * stride + k + 1] = fval[i];
    }

    return traj;
}

std::vector<double> predict(const Trajectory& history, std::span<const double> f_history) {
    const std::size_t dim = history.dimension();
    const std::size_t k = history.size() - 1;
    if (f_history.size() != (k + 1) * dim)
        throw std::invalid_argument("predict: f_history length does not match history");

    const FractionalOrder order = history.order();
    const double h = history.grid().h();
    const double inv_gamma = 1.0 / std::tgamma(order.alpha());
    const std::span<const double> y0 = history.state(0);

    std::vector<double> out(y0.begin(), y0.end());
    for (std::size_t j = 0; j <= k; ++j) {
        const double w = inv_gamma * predictor_weight(static_cast<std::int64_t>(j),
                                                      static_cast<std::int64_t>(k), order, h);
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * f_history[j * dim + i];
    }
    return out;
}

std::vector<double> correct(const SystemFunction& f, const Trajectory& history,
                            std::span<const double> f_history,
                            std::span<const double> predicted) {
    const std::size_t dim = history.dimension();
    const std::size_t k = history.size() - 1;
    if (f_history.size() != (k + 1) * dim)
        throw std::invalid_argument("correct: f_history length does not match history");
    if (predicted.size() != dim)
        throw std::invalid_argument("correct: predicted state has wrong dimension");

    const FractionalOrder order = history.order();
    const double h = history.grid().h();
    const double inv_gamma = 1.0 / std::tgamma(order.alpha());
    const std::span<const double> y0 = history.state(0);

    std::vector<double> out(y0.begin(), y0.end());
    for (std::size_t j = 0; j <= k; ++j) {
        const double w = inv_gamma * corrector_weight(static_cast<std::int64_t>(j),
                                                      static_cast<std::int64_t>(k), order, h);
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * f_history[j * dim + i];
    }

    std::vector<double> fpred(dim);
    f.eval(history.grid().time(k + 1), predicted, fpred);
    const double w_last = inv_gamma * corrector_weight(static_cast<std::int64_t>(k + 1),
                                                       static_cast<std::int64_t>(k), order, h);
    for (std::size_t i = 0; i < dim; ++i) out[i] += w_last * fpred[i];
    return out;
}

namespace reference {

Trajectory solve(const SystemFunction& f, std::span<const double> y0,
                 FractionalOrder order, TimeGrid grid) {
    check_inputs(f, y0);

    const std::size_t dim = f.dimension;
    const std::size_t n = grid.n_steps();

    Trajectory traj(grid, order, dim);
    traj.append(y0);

    std::vector<double> f_history;
    f_history.reserve((n + 1) * dim);
    std::vector<double> fval(dim);
    f.eval(0.0, y0, fval);
    f_history.insert(f_history.end(), fval.begin(), fval.end());

    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<double> pred = predict(traj, f_history);
        if (!all_finite(pred)) throw NonFiniteStateError(k + 1, "predictor diverged");
        const std::vector<double> corr = correct(f, traj, f_history, pred);
        if (!all_finite(corr)) throw NonFiniteStateError(k + 1, "corrector diverged");
        traj.append(corr);
        f.eval(grid.time(k + 1), traj.back(), fval);
        f_history.insert(f_history.end(), fval.begin(), fval.end());
    }
    return traj;
}

} // namespace reference

} // namespace fracmal
