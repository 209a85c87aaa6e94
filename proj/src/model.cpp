#include "fracmal/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracmal {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

} // namespace

void ModelParams::validate() const {
    const auto finite = [](double v) { return std::isfinite(v); };
    require(finite(a) && a >= 0.0, "ModelParams: a must be finite and >= 0");
    require(finite(b) && b >= 0.0 && b <= 1.0, "ModelParams: b must be in [0, 1]");
    require(finite(c) && c >= 0.0 && c <= 1.0, "ModelParams: c must be in [0, 1]");
    require(finite(m) && m >= 0.0, "ModelParams: m must be finite and >= 0");
    require(finite(nu) && nu >= 0.0, "ModelParams: nu must be finite and >= 0");
    require(finite(gamma) && gamma >= 0.0, "ModelParams: gamma must be finite and >= 0");
    require(finite(r) && r >= 0.0, "ModelParams: r must be finite and >= 0");
    require(finite(delta) && delta >= 0.0, "ModelParams: delta must be finite and >= 0");
    require(finite(lambda_h) && lambda_h > 0.0, "ModelParams: lambda_h must be positive");
    require(finite(lambda_v) && lambda_v > 0.0, "ModelParams: lambda_v must be positive");
}

ModelParams ModelParams::defaults() {
    // Calibrated so that R0 = 1.5 exactly at alpha = 1: the biting rate is
    // a = sqrt(2.25 * lambda_v * (nu + r + lambda_h + delta) / (b m c)),
    // rounded to the nearest double. Endemic point: i_h* ~ 0.12327 with
    // complex contracting eigenvalues (damped spiral).
    return {
        .a = 0.2466576574931336,
        .b = 0.75,
        .c = 0.75,
        .m = 2.0,
        .nu = 0.075,
        .gamma = 0.015,
        .r = 0.06,
        .delta = 0.015,
        .lambda_h = 0.006,
        .lambda_v = 0.195,
    };
}

PoweredParams alpha_power_params(const ModelParams& p, FractionalOrder order) {
    p.validate();
    const double al = order.alpha();
    const auto pw = [al](double v) { return std::pow(v, al); };
    return {
        .lambda_h = pw(p.lambda_h),
        .lambda_v = pw(p.lambda_v),
        .a = pw(p.a),
        .nu = pw(p.nu),
        .gamma = pw(p.gamma),
        .delta = pw(p.delta),
        .r = pw(p.r),
        .b = p.b,
        .m = p.m,
        .c = p.c,
    };
}

std::pair<double, double> simplex_defect(const EpiState& y) {
    return {y.s_h + y.i_h + y.r_h - 1.0, y.s_v + y.i_v - 1.0};
}

std::array<double, 5> rhs(const PoweredParams& q, const EpiState& y) {
    const double infection_h = q.a * q.b * q.m * y.s_h * y.i_v;
    const double infection_v = q.a * q.c * y.s_v * y.i_h;
    return {
        q.lambda_h * (1.0 - y.s_h) - infection_h + q.nu * y.i_h + q.gamma * y.r_h +
            q.delta * y.s_h * y.i_h,
        infection_h - (q.nu + q.r + q.lambda_h + q.delta) * y.i_h + q.delta * y.i_h * y.i_h,
        q.r * y.i_h - (q.gamma + q.lambda_h) * y.r_h + q.delta * y.i_h * y.r_h,
        q.lambda_v * (1.0 - y.s_v) - q.a * q.c * y.i_h * y.s_v,
        infection_v - q.lambda_v * y.i_v,
    };
}

std::array<double, 5> rhs(const ModelParams& p, FractionalOrder order, const EpiState& y) {
    return rhs(alpha_power_params(p, order), y);
}

std::array<double, 3> reduced_rhs(const PoweredParams& q, const std::array<double, 3>& y) {
    const auto [s_h, i_h, i_v] = y;
    const double r_h = 1.0 - s_h - i_h;
    const double s_v = 1.0 - i_v;
    return {
        q.lambda_h * (1.0 - s_h) - q.a * q.b * q.m * s_h * i_v + q.nu * i_h + q.gamma * r_h +
            q.delta * s_h * i_h,
        q.a * q.b * q.m * s_h * i_v - (q.nu + q.r + q.lambda_h + q.delta) * i_h +
            q.delta * i_h * i_h,
        q.a * q.c * s_v * i_h - q.lambda_v * i_v,
    };
}

SystemFunction make_system(const ModelParams& p, FractionalOrder order) {
    const PoweredParams q = alpha_power_params(p, order);
    return {
        .dimension = 5,
        .eval = [q](double, std::span<const double> y, std::span<double> dydt) {
            const auto d = rhs(q, EpiState::from_array(y));
            std::copy(d.begin(), d.end(), dydt.begin());
        },
    };
}

double basic_reproduction_number(const ModelParams& p, FractionalOrder order) {
    const PoweredParams q = alpha_power_params(p, order);
    const double transitions = q.nu + q.r + q.lambda_h + q.delta;
    return std::sqrt(q.a * q.a * q.b * q.m * q.c / (q.lambda_v * transitions));
}

EpiState disease_free_equilibrium() {
    return {1.0, 0.0, 0.0, 1.0, 0.0};
}

namespace {

// Components of the endemic point expressed in the scalar unknown x = i_h*.
struct EndemicExpressions {
    PoweredParams q;

    double den_r(double x) const { return q.lambda_h + q.gamma - q.delta * x; }
    double den_s(double x) const {
        return (q.lambda_h - q.delta * x) * (q.lambda_v + q.a * q.c * x) +
               q.a * q.a * q.b * q.m * q.c * x;
    }

    EpiState assemble(double x) const {
        const double vden = q.lambda_v + q.a * q.c * x;
        const double i_v = q.a * q.c * x / vden;
        const double s_v = q.lambda_v / vden;
        const double r_h = q.r * x / den_r(x);
        const double numer = den_r(x) * (q.lambda_h + q.nu * x) + q.gamma * q.r * x;
        const double s_h = vden * numer / (den_r(x) * den_s(x));
        return {s_h, x, r_h, s_v, i_v};
    }

    // Residual of the i_h equation with the other components substituted in.
    double residual(double x) const {
        const EpiState y = assemble(x);
        return q.a * q.b * q.m * y.s_h * y.i_v -
               (q.nu + q.r + q.lambda_h + q.delta) * x + q.delta * x * x;
    }
};

constexpr double kDenominatorGuard = 1e-9;
constexpr int kScanCells = 1024;

bool state_is_interior(const EpiState& y) {
    for (double v : y.to_array())
        if (!(v > 0.0 && v < 1.0)) return false;
    return std::abs(y.s_h + y.i_h + y.r_h - 1.0) <= 1e-6;
}

} // namespace

std::optional<EndemicEquilibrium> endemic_equilibrium(const ModelParams& p,
                                                      FractionalOrder order) {
    const EndemicExpressions ex{alpha_power_params(p, order)};

    // Scan nodes over (0, 1). Nodes too close to a denominator zero are
    // rejected, and a bracket is valid only when both denominators keep
    // their sign across it (a denominator sign flip is a pole of the
    // residual, not a root).
    struct Node {
        double x, g;
        bool valid;
        int sign_r, sign_s;
    };
    std::vector<Node> nodes;
    nodes.reserve(kScanCells + 2);

    const auto probe = [&](double x) {
        const double dr = ex.den_r(x);
        const double ds = ex.den_s(x);
        Node nd{x, 0.0, true, dr > 0.0 ? 1 : -1, ds > 0.0 ? 1 : -1};
        if (std::abs(dr) <= kDenominatorGuard || std::abs(ds) <= kDenominatorGuard)
            nd.valid = false;
        else
            nd.g = ex.residual(x);
        nodes.push_back(nd);
    };

    probe(0x1p-20);
    for (int i = 1; i < kScanCells; ++i) probe(static_cast<double>(i) / kScanCells);
    probe(1.0 - 0x1p-20);

    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Node& lo = nodes[i];
        const Node& hi = nodes[i + 1];
        if (!lo.valid || !hi.valid) continue;
        if (lo.sign_r != hi.sign_r || lo.sign_s != hi.sign_s) continue;
        if (lo.g == 0.0 || (lo.g > 0.0) == (hi.g > 0.0)) continue;

        // Bisect to machine-level width (well past the 1e-12 target).
        double xa = lo.x, xb = hi.x, ga = lo.g;
        for (int it = 0; it < 80 && xb - xa > 1e-15 * std::max(1.0, xa); ++it) {
            const double xm = 0.5 * (xa + xb);
            const double gm = ex.residual(xm);
            if (gm == 0.0) {
                xa = xb = xm;
                break;
            }
            if ((gm > 0.0) == (ga > 0.0)) {
                xa = xm;
                ga = gm;
            } else {
                xb = xm;
            }
        }
        const double root = 0.5 * (xa + xb);

        const EpiState state = ex.assemble(root);
        if (!state_is_interior(state)) continue; // spurious off-simplex branch

        const auto f = rhs(ex.q, state);
        double res = 0.0;
        for (double v : f) res = std::max(res, std::abs(v));
        if (res > 1e-9)
            throw std::runtime_error("endemic_equilibrium: bracketed root failed to polish "
                                     "(residual " + std::to_string(res) + ")");
        return EndemicEquilibrium{state, root, res};
    }
    return std::nullopt;
}

EquilibriumSet equilibria(const ModelParams& p, FractionalOrder order) {
    return {disease_free_equilibrium(), endemic_equilibrium(p, order)};
}

} // namespace fracmal
