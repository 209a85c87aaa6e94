// Test-only oracles, independent of the solver/analysis code they check:
// a classical fixed-step RK4 integrator, central finite differences, and a
// deterministic random-parameter generator.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fracmal/model.hpp"

namespace oracle {

// Values pinned from a 50-digit computation.
inline constexpr double kGamma03 = 2.9915689876875906283;
inline constexpr double kGamma05 = 1.7724538509055160273;
inline constexpr double kGamma08 = 1.1642297137253033736;
inline constexpr double kGamma09 = 1.0686287021193193549;
inline constexpr double kGamma15 = 0.88622692545275801365;

using Rhs = std::function<void(double, std::span<const double>, std::span<double>)>;

// Classical 4th-order Runge-Kutta on a uniform grid; returns all states.
inline std::vector<std::vector<double>> rk4(const Rhs& f, std::vector<double> y,
                                            double h, std::size_t n_steps) {
    const std::size_t dim = y.size();
    std::vector<std::vector<double>> out;
    out.reserve(n_steps + 1);
    out.push_back(y);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * h;
        f(t, y, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        f(t + h, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        out.push_back(y);
    }
    return out;
}

// Central finite-difference Jacobian of a map R^N -> R^N.
template <std::size_t N>
std::array<std::array<double, N>, N> fd_jacobian(
    const std::function<std::array<double, N>(const std::array<double, N>&)>& f,
    const std::array<double, N>& at, double step = 1e-6) {
    std::array<std::array<double, N>, N> j{};
    for (std::size_t col = 0; col < N; ++col) {
        std::array<double, N> hi = at, lo = at;
        hi[col] += step;
        lo[col] -= step;
        const auto fhi = f(hi);
        const auto flo = f(lo);
        for (std::size_t row = 0; row < N; ++row)
            j[row][col] = (fhi[row] - flo[row]) / (2.0 * step);
    }
    return j;
}

// Valid random parameter sets spanning the admissible ranges.
inline fracmal::ModelParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::uniform_real_distribution<double> rate(1e-4, 1.0);
    std::uniform_real_distribution<double> biting(0.01, 2.0);
    std::uniform_real_distribution<double> ratio(0.1, 10.0);
    return {
        .a = biting(rng),
        .b = unit(rng),
        .c = unit(rng),
        .m = ratio(rng),
        .nu = rate(rng),
        .gamma = rate(rng),
        .r = rate(rng),
        .delta = rate(rng),
        .lambda_h = rate(rng),
        .lambda_v = rate(rng),
    };
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace oracle
