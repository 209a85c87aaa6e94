#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>

#include "fracmal/types.hpp"

namespace fracmal {

/// Biological rates and probabilities of the five-compartment malaria model,
/// stored un-powered; order-dependent powering happens at evaluation so one
/// parameter set serves a whole alpha sweep.
struct ModelParams {
    double a;        // daily biting rate on humans per mosquito
    double b;        // proportion of infectious bites on humans
    double c;        // probability a mosquito becomes infectious
    double m;        // female mosquitoes per human host (N_V / N_H)
    double nu;       // human recovery rate
    double gamma;    // rate of loss of immunity
    double r;        // rate of acquiring immunity
    double delta;    // disease-induced death rate of infected humans
    double lambda_h; // human per-capita birth rate
    double lambda_v; // mosquito per-capita birth rate

    /// Throws std::invalid_argument naming the first violated field.
    void validate() const;

    /// Calibrated default set: R0 = 1.5 at alpha = 1 with damped oscillatory
    /// convergence to the endemic point. See README for provenance.
    static ModelParams defaults();
};

/// The rates of ModelParams raised to alpha; b, m, c stay un-powered.
struct PoweredParams {
    double lambda_h, lambda_v, a, nu, gamma, delta, r;
    double b, m, c;
};

PoweredParams alpha_power_params(const ModelParams& p, FractionalOrder order);

/// Population proportions (s_h, i_h, r_h) for humans and (s_v, i_v) for
/// mosquitoes; each group sums to 1 on the invariant double simplex.
struct EpiState {
    double s_h, i_h, r_h, s_v, i_v;

    std::array<double, 5> to_array() const { return {s_h, i_h, r_h, s_v, i_v}; }
    static EpiState from_array(std::span<const double> y) {
        return {y[0], y[1], y[2], y[3], y[4]};
    }
};

/// (s_h + i_h + r_h - 1, s_v + i_v - 1)
std::pair<double, double> simplex_defect(const EpiState& y);

/// The five right-hand sides evaluated at y. The system is autonomous.
std::array<double, 5> rhs(const PoweredParams& q, const EpiState& y);
std::array<double, 5> rhs(const ModelParams& p, FractionalOrder order, const EpiState& y);

/// Reduced 3-D right-hand side in (s_h, i_h, i_v) coordinates with
/// r_h = 1 - s_h - i_h and s_v = 1 - i_v eliminated.
std::array<double, 3> reduced_rhs(const PoweredParams& q, const std::array<double, 3>& y);

/// Adapter for the fractional solver.
SystemFunction make_system(const ModelParams& p, FractionalOrder order);

/// Closed form sqrt(a^{2a} b m c / (lambda_v^a (nu^a + r^a + lambda_h^a + delta^a))).
double basic_reproduction_number(const ModelParams& p, FractionalOrder order);

/// (1, 0, 0, 1, 0)
EpiState disease_free_equilibrium();

struct EndemicEquilibrium {
    EpiState state;
    double i_h_star;  // the scalar root the other components are expressed in
    double residual;  // max-norm of the full right-hand side at the point
};

/// Locates the interior equilibrium by a bracketing scan of the scalar
/// residual in i_h over (0, 1) followed by bisection polish. Returns nullopt
/// when no interior root exists (e.g. R0 < 1); throws std::runtime_error if a
/// bracketed root fails to polish.
///
/// The scalar residual also vanishes on a spurious off-simplex branch at
/// i_h = lambda_h^a / delta^a; candidates are accepted only when the
/// assembled state lies in (0,1)^5 and satisfies the human simplex
/// constraint.
std::optional<EndemicEquilibrium> endemic_equilibrium(const ModelParams& p,
                                                      FractionalOrder order);

struct EquilibriumSet {
    EpiState disease_free;
    std::optional<EndemicEquilibrium> endemic;
};

EquilibriumSet equilibria(const ModelParams& p, FractionalOrder order);

} // namespace fracmal
