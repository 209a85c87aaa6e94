#include "fracmal/analysis.hpp"

#include <cmath>
#include <numbers>

namespace fracmal {

NextGenMatrices next_generation(const ModelParams& p, FractionalOrder order) {
    const PoweredParams q = alpha_power_params(p, order);
    const double transitions = q.nu + q.r + q.lambda_h + q.delta;

    NextGenMatrices out{};
    out.F = {{{0.0, q.a * q.b * q.m}, {q.a * q.c, 0.0}}};
    out.V = {{{transitions, 0.0}, {0.0, q.lambda_v}}};
    out.FV_inv = {{{0.0, q.a * q.b * q.m / q.lambda_v}, {q.a * q.c / transitions, 0.0}}};
    out.spectral_radius = std::sqrt(out.FV_inv[0][1] * out.FV_inv[1][0]);
    return out;
}

Mat5 jacobian_dfe(const ModelParams& p, FractionalOrder order) {
    const PoweredParams q = alpha_power_params(p, order);
    const double transitions = q.nu + q.r + q.lambda_h + q.delta;
    const double abm = q.a * q.b * q.m;
    const double ac = q.a * q.c;
    return {{
        {-q.lambda_h, q.nu + q.delta, q.gamma, 0.0, -abm},
        {0.0, -transitions, 0.0, 0.0, abm},
        {0.0, q.r, -(q.lambda_h + q.gamma), 0.0, 0.0},
        {0.0, -ac, 0.0, -q.lambda_v, 0.0},
        {0.0, ac, 0.0, 0.0, -q.lambda_v},
    }};
}

Mat3 jacobian_endemic(const ModelParams& p, FractionalOrder order, const EpiState& at) {
    const PoweredParams q = alpha_power_params(p, order);
    const double abm = q.a * q.b * q.m;
    const double ac = q.a * q.c;
    return {{
        {-(q.lambda_h + q.gamma + abm * at.i_v - q.delta * at.i_h),
         q.nu + q.delta * at.s_h - q.gamma,
         -abm * at.s_h},
        {abm * at.i_v,
         -(q.nu + q.r + q.lambda_h + q.delta - 2.0 * q.delta * at.i_h),
         abm * at.s_h},
        {0.0, ac * (1.0 - at.i_v), -(q.lambda_v + ac * at.i_h)},
    }};
}

CubicCoefficients characteristic_coefficients(const Mat3& j) {
    const double trace = j[0][0] + j[1][1] + j[2][2];
    const double minors = (j[0][0] * j[1][1] - j[0][1] * j[1][0]) +
                          (j[0][0] * j[2][2] - j[0][2] * j[2][0]) +
                          (j[1][1] * j[2][2] - j[1][2] * j[2][1]);
    const double det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                       j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                       j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    return {-trace, minors, -det};
}

double cubic_discriminant(const CubicCoefficients& c) {
    const double b1b2 = c.b1 * c.b2;
    return 18.0 * c.b1 * c.b2 * c.b3 + b1b2 * b1b2 - 4.0 * c.b3 * c.b1 * c.b1 * c.b1 -
           4.0 * c.b2 * c.b2 * c.b2 - 27.0 * c.b3 * c.b3;
}

bool matignon_stable(std::complex<double> lambda, FractionalOrder order) {
    if (lambda == std::complex<double>(0.0, 0.0)) return false;
    return std::abs(std::arg(lambda)) > order.alpha() * std::numbers::pi / 2.0;
}

MatignonClass matignon_classify(std::complex<double> lambda, FractionalOrder order) {
    // The stability region's boundary is the cone |arg| = alpha*pi/2 with
    // vertex at the origin; proximity to the vertex is measured in modulus,
    // proximity to the rays in argument.
    if (std::abs(lambda) <= kMatignonBand) return MatignonClass::Marginal;
    const double gap = std::abs(std::arg(lambda)) - order.alpha() * std::numbers::pi / 2.0;
    if (std::abs(gap) <= kMatignonBand) return MatignonClass::Marginal;
    return gap > 0.0 ? MatignonClass::Stable : MatignonClass::Unstable;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

std::string_view to_string(PropositionBranch b) {
    switch (b) {
        case PropositionBranch::I: return "i";
        case PropositionBranch::II: return "ii";
        case PropositionBranch::III: return "iii";
        case PropositionBranch::IV: return "iv";
        case PropositionBranch::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::string_view to_string(EndemicVerdict v) {
    switch (v) {
        case EndemicVerdict::Stable: return "stable";
        case EndemicVerdict::Unstable: return "unstable";
        case EndemicVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

BranchResult classify_endemic(const CubicCoefficients& c, double discriminant,
                              FractionalOrder order) {
    const double alpha = order.alpha();
    const double b1b2 = c.b1 * c.b2;

    if (discriminant > 0.0 && c.b1 > 0.0 && c.b3 > 0.0 && b1b2 > c.b3)
        return {PropositionBranch::I, EndemicVerdict::Stable};

    if (discriminant < 0.0 && c.b1 >= 0.0 && c.b2 >= 0.0 && c.b3 > 0.0 && alpha < 2.0 / 3.0)
        return {PropositionBranch::II, EndemicVerdict::Stable};

    const double scale = std::max({std::abs(b1b2), std::abs(c.b3), 1e-300});
    if (discriminant < 0.0 && c.b1 > 0.0 && c.b2 > 0.0 &&
        std::abs(b1b2 - c.b3) <= 1e-9 * scale && alpha < 1.0)
        return {PropositionBranch::III, EndemicVerdict::Stable};

    if (discriminant < 0.0 && c.b1 < 0.0 && c.b2 < 0.0 && alpha > 2.0 / 3.0)
        return {PropositionBranch::IV, EndemicVerdict::Unstable};

    return {PropositionBranch::Indeterminate, EndemicVerdict::Indeterminate};
}

std::array<std::complex<double>, 5> dfe_eigenvalues(const ModelParams& p,
                                                    FractionalOrder order) {
    const PoweredParams q = alpha_power_params(p, order);
    const double transitions = q.nu + q.r + q.lambda_h + q.delta;

    // Infection block B = [[-transitions, a^a b m], [a^a c, -lambda_v^a]].
    const double tr = -(transitions + q.lambda_v);
    const double det = q.lambda_v * transitions - q.a * q.a * q.b * q.m * q.c;
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));

    return {
        std::complex<double>(-q.lambda_h, 0.0),
        std::complex<double>(-(q.lambda_h + q.gamma), 0.0),
        std::complex<double>(-q.lambda_v, 0.0),
        0.5 * (tr + disc),
        0.5 * (tr - disc),
    };
}

namespace {

template <std::size_t N>
Verdict verdict_from_spectrum(const std::array<std::complex<double>, N>& eigenvalues,
                              FractionalOrder order) {
    bool any_marginal = false;
    for (const auto& ev : eigenvalues) {
        switch (matignon_classify(ev, order)) {
            case MatignonClass::Unstable: return Verdict::Unstable;
            case MatignonClass::Marginal: any_marginal = true; break;
            case MatignonClass::Stable: break;
        }
    }
    return any_marginal ? Verdict::Marginal : Verdict::Stable;
}

} // namespace

StabilityReport full_report(const ModelParams& p, FractionalOrder order) {
    StabilityReport rep{};
    rep.alpha = order.alpha();
    rep.r0 = basic_reproduction_number(p, order);
    rep.dfe_eigenvalues = dfe_eigenvalues(p, order);
    rep.dfe_verdict = verdict_from_spectrum(rep.dfe_eigenvalues, order);

    if (const auto endemic = endemic_equilibrium(p, order)) {
        EndemicReport er{};
        er.state = endemic->state;
        er.i_h_star = endemic->i_h_star;
        er.residual = endemic->residual;
        const Mat3 j = jacobian_endemic(p, order, endemic->state);
        er.coefficients = characteristic_coefficients(j);
        er.discriminant = cubic_discriminant(er.coefficients);
        er.eigenvalues = solve_cubic(er.coefficients);
        const BranchResult br = classify_endemic(er.coefficients, er.discriminant, order);
        er.branch = br.branch;
        er.verdict = br.verdict;
        rep.endemic = er;
    }
    return rep;
}

} // namespace fracmal
