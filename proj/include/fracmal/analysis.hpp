#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "fracmal/cubic.hpp"
#include "fracmal/model.hpp"
#include "fracmal/types.hpp"

namespace fracmal {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat5 = std::array<std::array<double, 5>, 5>;

/// New-infection matrix F, transition matrix V, and their product FV^{-1},
/// linearized at the disease-free equilibrium. Both off-diagonal structure
/// and the spectral radius have closed forms for this model.
struct NextGenMatrices {
    Mat2 F, V, FV_inv;
    double spectral_radius;
};

NextGenMatrices next_generation(const ModelParams& p, FractionalOrder order);

/// 5x5 Jacobian of the full system at (1, 0, 0, 1, 0).
Mat5 jacobian_dfe(const ModelParams& p, FractionalOrder order);

/// 3x3 Jacobian of the reduced (s_h, i_h, i_v) system at the given point
/// (normally the endemic equilibrium).
Mat3 jacobian_endemic(const ModelParams& p, FractionalOrder order, const EpiState& at);

/// b1 = -tr(J), b2 = sum of principal 2x2 minors, b3 = -det(J).
CubicCoefficients characteristic_coefficients(const Mat3& jacobian);

/// 18 b1 b2 b3 + (b1 b2)^2 - 4 b3 b1^3 - 4 b2^3 - 27 b3^2
double cubic_discriminant(const CubicCoefficients& c);

/// Strict fractional stability test |arg(lambda)| > alpha*pi/2; a zero
/// eigenvalue has no argument and fails the test.
bool matignon_stable(std::complex<double> lambda, FractionalOrder order);

/// Half-width of the band around the stability boundary (and around zero)
/// classified as marginal in report verdicts.
inline constexpr double kMatignonBand = 1e-9;

enum class MatignonClass { Stable, Marginal, Unstable };
MatignonClass matignon_classify(std::complex<double> lambda, FractionalOrder order);

enum class Verdict { Stable, Unstable, Marginal };
enum class PropositionBranch { I, II, III, IV, Indeterminate };
enum class EndemicVerdict { Stable, Unstable, Indeterminate };

std::string_view to_string(Verdict v);
std::string_view to_string(PropositionBranch b);
std::string_view to_string(EndemicVerdict v);

struct BranchResult {
    PropositionBranch branch;
    EndemicVerdict verdict;
};

/// Sufficient-condition classifier over the characteristic cubic. Branches
/// are tried in order and the first whose hypotheses hold decides:
///   (i)   D > 0 and the full Routh-Hurwitz set b1 > 0, b3 > 0, b1 b2 > b3  -> stable
///   (ii)  D < 0, b1 >= 0, b2 >= 0, b3 > 0, alpha < 2/3                     -> stable
///   (iii) D < 0, b1 > 0, b2 > 0, b1 b2 = b3 (1e-9 relative), alpha in (0,1)-> stable
///   (iv)  D < 0, b1 < 0, b2 < 0, alpha > 2/3                               -> unstable
/// Anything else is indeterminate (the branches do not cover all spectra).
BranchResult classify_endemic(const CubicCoefficients& c, double discriminant,
                              FractionalOrder order);

/// Eigenvalues of the DFE Jacobian via its analytic factorization: three
/// explicit negative reals plus the quadratic spectrum of the 2x2 infection
/// block.
std::array<std::complex<double>, 5> dfe_eigenvalues(const ModelParams& p,
                                                    FractionalOrder order);

struct EndemicReport {
    EpiState state;
    double i_h_star;
    double residual;
    std::array<std::complex<double>, 3> eigenvalues;
    CubicCoefficients coefficients;
    double discriminant;
    PropositionBranch branch;
    EndemicVerdict verdict;
};

struct StabilityReport {
    double alpha;
    double r0;
    std::array<std::complex<double>, 5> dfe_eigenvalues;
    Verdict dfe_verdict;
    std::optional<EndemicReport> endemic;
};

/// Aggregates R0, the DFE spectrum and verdict, and (when the endemic point
/// exists) its coefficients, discriminant, branch and verdict.
StabilityReport full_report(const ModelParams& p, FractionalOrder order);

} // namespace fracmal
