#include "fracmal/output.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>

#include <json.hpp>

#include "fracmal/solver.hpp"

namespace fracmal {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 5> kStateNames = {"s_h", "i_h", "r_h", "s_v", "i_v"};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Trajectory solve_scenario(const ScenarioConfig& cfg, double alpha) {
    const SystemFunction f = make_system(cfg.params, FractionalOrder(alpha));
    const auto y0 = cfg.initial_state.to_array();
    return solve(f, y0, FractionalOrder(alpha), TimeGrid(cfg.h, cfg.n_steps()));
}

// Writes via a row callback; removes the file if anything throws mid-write.
template <typename RowWriter>
void write_file(const std::filesystem::path& path, RowWriter&& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path.string() + "'");
    try {
        rows(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    } catch (...) {
        out.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw;
    }
}

// Runs one body per alpha, possibly concurrently: the solves are independent
// pure computations and each alpha writes its own file, so scheduling cannot
// change any output byte. The first exception wins and is rethrown.
template <typename Body>
void for_each_alpha(const std::vector<double>& alphas, Body&& body) {
    std::exception_ptr failure = nullptr;
    const auto count = static_cast<std::int64_t>(alphas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(alphas[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(fracmal_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

json complex_pair(const std::complex<double>& z) {
    return json::array({z.real(), z.imag()});
}

json state_to_json(const EpiState& y) {
    return {{"s_h", y.s_h}, {"i_h", y.i_h}, {"r_h", y.r_h}, {"s_v", y.s_v}, {"i_v", y.i_v}};
}

} // namespace

std::string format_alpha(double alpha) {
    const double scaled = alpha * 100.0;
    const bool two_enough = std::abs(scaled - std::round(scaled)) < 1e-9;
    char buf[32];
    std::snprintf(buf, sizeof buf, two_enough ? "%.2f" : "%.4f", alpha);
    return buf;
}

std::size_t state_variable_index(std::string_view name) {
    for (std::size_t i = 0; i < kStateNames.size(); ++i)
        if (kStateNames[i] == name) return i;
    throw ConfigError("unknown state variable '" + std::string(name) +
                      "' (expected one of s_h, i_h, r_h, s_v, i_v)");
}

json report_to_json(const StabilityReport& rep) {
    json j;
    j["alpha"] = rep.alpha;
    j["r0"] = rep.r0;
    json evs = json::array();
    for (const auto& ev : rep.dfe_eigenvalues) evs.push_back(complex_pair(ev));
    j["dfe_eigenvalues"] = evs;
    j["dfe_verdict"] = to_string(rep.dfe_verdict);

    if (rep.endemic) {
        const EndemicReport& er = *rep.endemic;
        j["endemic"] = {{"state", state_to_json(er.state)},
                        {"i_h_star", er.i_h_star},
                        {"residual", er.residual}};
        j["b1"] = er.coefficients.b1;
        j["b2"] = er.coefficients.b2;
        j["b3"] = er.coefficients.b3;
        j["discriminant"] = er.discriminant;
        j["proposition_branch"] = to_string(er.branch);
        j["endemic_verdict"] = to_string(er.verdict);
    } else {
        j["endemic"] = nullptr;
        j["b1"] = nullptr;
        j["b2"] = nullptr;
        j["b3"] = nullptr;
        j["discriminant"] = nullptr;
        j["proposition_branch"] = nullptr;
        j["endemic_verdict"] = nullptr;
    }
    return j;
}

void run_simulate(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    if (!cfg.outputs.trajectory)
        throw ConfigError("trajectory output is disabled by the config's outputs flags");
    std::filesystem::create_directories(out_dir);

    for_each_alpha(cfg.alphas, [&](double alpha) {
        const Trajectory traj = solve_scenario(cfg, alpha);
        const auto path = out_dir / ("trajectory_alpha" + format_alpha(alpha) + ".csv");
        write_file(path, [&](std::ofstream& out) {
            out << "t,s_h,i_h,r_h,s_v,i_v\n";
            for (std::size_t k = 0; k < traj.size(); k += cfg.stride) {
                out << format_double(traj.time(k));
                for (double v : traj.state(k)) out << ',' << format_double(v);
                out << '\n';
            }
        });
    });
}

void run_phase(const ScenarioConfig& cfg, std::string_view x_var, std::string_view y_var,
               const std::filesystem::path& out_dir) {
    cfg.validate();
    if (!cfg.outputs.phase)
        throw ConfigError("phase output is disabled by the config's outputs flags");
    const std::size_t ix = state_variable_index(x_var);
    const std::size_t iy = state_variable_index(y_var);
    if (ix == iy) throw ConfigError("phase variables must be distinct");
    std::filesystem::create_directories(out_dir);

    for_each_alpha(cfg.alphas, [&](double alpha) {
        const Trajectory traj = solve_scenario(cfg, alpha);
        const auto path = out_dir / ("phase_" + std::string(x_var) + "_" + std::string(y_var) +
                                     "_alpha" + format_alpha(alpha) + ".csv");
        write_file(path, [&](std::ofstream& out) {
            out << x_var << ',' << y_var << '\n';
            for (std::size_t k = 0; k < traj.size(); k += cfg.stride) {
                const auto y = traj.state(k);
                out << format_double(y[ix]) << ',' << format_double(y[iy]) << '\n';
            }
        });
    });
}

void run_analyze(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    if (!cfg.outputs.report)
        throw ConfigError("report output is disabled by the config's outputs flags");
    std::filesystem::create_directories(out_dir);

    for (double alpha : cfg.alphas) {
        const StabilityReport rep = full_report(cfg.params, FractionalOrder(alpha));
        const auto path = out_dir / ("report_alpha" + format_alpha(alpha) + ".json");
        write_file(path, [&](std::ofstream& out) {
            out << report_to_json(rep).dump(2) << '\n';
        });
    }
}

} // namespace fracmal
