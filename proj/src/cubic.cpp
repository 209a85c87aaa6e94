#include "fracmal/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracmal {

namespace {

std::complex<double> eval(const CubicCoefficients& c, std::complex<double> z) {
    return ((z + c.b1) * z + c.b2) * z + c.b3;
}

std::complex<double> eval_deriv(const CubicCoefficients& c, std::complex<double> z) {
    return (3.0 * z + 2.0 * c.b1) * z + c.b2;
}

std::complex<double> polish(const CubicCoefficients& c, std::complex<double> z) {
    for (int it = 0; it < 2; ++it) {
        const std::complex<double> d = eval_deriv(c, z);
        if (std::abs(d) < 1e-300) break;
        z -= eval(c, z) / d;
    }
    return z;
}

double polish_real(const CubicCoefficients& c, double x) {
    for (int it = 0; it < 2; ++it) {
        const double d = (3.0 * x + 2.0 * c.b1) * x + c.b2;
        if (std::abs(d) < 1e-300) break;
        x -= (((x + c.b1) * x + c.b2) * x + c.b3) / d;
    }
    return x;
}

} // namespace

std::array<std::complex<double>, 3> solve_cubic(const CubicCoefficients& c) {
    const double shift = c.b1 / 3.0;
    const double p = c.b2 - c.b1 * c.b1 / 3.0;
    const double q = 2.0 * c.b1 * c.b1 * c.b1 / 27.0 - c.b1 * c.b2 / 3.0 + c.b3;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    if (disc <= 0.0) {
        // Three real roots. p <= 0 here; rho = 0 only for the triple root.
        const double rho = std::sqrt(-p * p * p / 27.0);
        const double theta = rho > 0.0 ? std::acos(std::clamp(-q / (2.0 * rho), -1.0, 1.0)) : 0.0;
        const double scale = 2.0 * std::sqrt(-p / 3.0);
        std::array<std::complex<double>, 3> roots;
        for (int k = 0; k < 3; ++k) {
            const double t = scale * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0);
            roots[k] = polish_real(c, t - shift);
        }
        return roots;
    }

    // One real root and a conjugate pair; pick the cube root that avoids
    // cancellation between -q/2 and sqrt(disc).
    const double sq = std::sqrt(disc);
    const double w = -q / 2.0 - std::copysign(sq, q);
    const double u = std::cbrt(w);
    const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;

    const double real_root = polish_real(c, u + v - shift);
    std::complex<double> z(-0.5 * (u + v) - shift, 0.5 * std::numbers::sqrt3 * (u - v));
    z = polish(c, z);
    return {std::complex<double>(real_root, 0.0), z, std::conj(z)};
}

} // namespace fracmal
