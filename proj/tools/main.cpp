#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "fracmal/config.hpp"
#include "fracmal/output.hpp"
#include "fracmal/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;     // bad flags, unreadable or invalid config
constexpr int kExitNumerical = 2; // solver abort or root-finder failure

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::size_t stride = 0; // 0 = keep the config's stride
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario JSON file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: current)");
    cmd->add_option("--stride", args.stride, "thin CSV rows to every n-th grid point");
}

fracmal::ScenarioConfig load(const CommonArgs& args) {
    fracmal::ScenarioConfig cfg = fracmal::load_config(args.config_path);
    if (args.stride > 0) cfg.stride = args.stride;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-order malaria model toolkit"};
    app.require_subcommand(1);

    CommonArgs sim_args, phase_args, analyze_args;
    std::string x_var, y_var;

    CLI::App* sim = app.add_subcommand("simulate", "integrate the scenario, one CSV per alpha");
    add_common(sim, sim_args);

    CLI::App* phase = app.add_subcommand("phase", "phase-portrait CSV for a variable pair");
    add_common(phase, phase_args);
    phase->add_option("--x", x_var, "x-axis variable (s_h, i_h, r_h, s_v, i_v)")->required();
    phase->add_option("--y", y_var, "y-axis variable")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "stability report JSON per alpha");
    add_common(analyze, analyze_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            fracmal::run_simulate(load(sim_args), sim_args.out_dir);
        } else if (phase->parsed()) {
            fracmal::run_phase(load(phase_args), x_var, y_var, phase_args.out_dir);
        } else if (analyze->parsed()) {
            fracmal::run_analyze(load(analyze_args), analyze_args.out_dir);
        }
    } catch (const fracmal::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const fracmal::NonFiniteStateError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
