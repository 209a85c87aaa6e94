#pragma once

#include <array>
#include <complex>

namespace fracmal {

/// Coefficients of lambda^3 + b1 lambda^2 + b2 lambda + b3.
struct CubicCoefficients {
    double b1, b2, b3;
};

/// All three roots of the monic real-coefficient cubic. Real roots carry a
/// zero imaginary part; a complex pair is returned exactly conjugate.
/// Branches on the sign of the depressed discriminant (trig form for three
/// real roots, Cardano on the larger-magnitude cube root otherwise) and
/// finishes with a Newton polish.
std::array<std::complex<double>, 3> solve_cubic(const CubicCoefficients& c);

} // namespace fracmal
