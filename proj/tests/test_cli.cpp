#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "fracmal/config.hpp"
#include "fracmal/output.hpp"
#include "fracmal/solver.hpp"

using namespace fracmal;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fracmal_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_json(const TempDir& dir, const json& j, const char* name = "config.json") {
    const fs::path p = dir.path / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACMAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config defaults: an empty document yields the shipped scenario") {
    TempDir dir;
    const auto cfg = load_config(write_json(dir, json::object()));
    CHECK(cfg.alphas == std::vector<double>{1.0, 0.99, 0.95, 0.90});
    CHECK(cfg.h == 0.01);
    CHECK(cfg.horizon == 200.0);
    CHECK(cfg.stride == 1);
    CHECK(cfg.params.a == ModelParams::defaults().a);
    CHECK(cfg.outputs.trajectory);
    CHECK(cfg.outputs.phase);
    CHECK(cfg.outputs.report);
}

TEST_CASE("config round-trips through serialize/load unchanged") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {0.95, 0.85};
    cfg.h = 0.02;
    cfg.horizon = 50.0;
    cfg.stride = 4;
    cfg.initial_state = {0.7, 0.25, 0.05, 0.85, 0.15};
    cfg.outputs.phase = false;
    const auto reloaded = load_config(write_json(dir, to_json(cfg)));
    CHECK(to_json(reloaded) == to_json(cfg));
}

TEST_CASE("config validation errors carry the violated invariant") {
    TempDir dir;
    json j;
    j["initial_state"] = {{"s_h", 0.5}, {"i_h", 0.3}, {"r_h", 0.3}, {"s_v", 1.0}, {"i_v", 0.0}};
    CHECK_THROWS_WITH_AS((void)load_config(write_json(dir, j)),
                         doctest::Contains("simplex defect"), ConfigError);

    j = json{{"alphas", json::array()}};
    CHECK_THROWS_WITH_AS((void)load_config(write_json(dir, j)),
                         doctest::Contains("alphas"), ConfigError);

    j = json{{"alphas", {1.2}}};
    CHECK_THROWS_AS((void)load_config(write_json(dir, j)), ConfigError);

    j = json{{"h", 1e-6}, {"horizon", 20.0}};
    CHECK_THROWS_WITH_AS((void)load_config(write_json(dir, j)),
                         doctest::Contains("1e7-step guard"), ConfigError);

    j = json{{"unexpected", 1}};
    CHECK_THROWS_WITH_AS((void)load_config(write_json(dir, j)),
                         doctest::Contains("unknown key"), ConfigError);

    CHECK_THROWS_WITH_AS((void)load_config(dir.path / "missing.json"),
                         doctest::Contains("cannot open"), ConfigError);

    const fs::path bad = dir.path / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_WITH_AS((void)load_config(bad), doctest::Contains("parse error"), ConfigError);
}

TEST_CASE("alpha formatting: two decimals, four when lossy") {
    CHECK(format_alpha(1.0) == "1.00");
    CHECK(format_alpha(0.99) == "0.99");
    CHECK(format_alpha(0.95) == "0.95");
    CHECK(format_alpha(0.9) == "0.90");
    CHECK(format_alpha(0.999) == "0.9990");
    CHECK(format_alpha(0.8125) == "0.8125");
}

TEST_CASE("state variable names resolve to indices") {
    CHECK(state_variable_index("s_h") == 0);
    CHECK(state_variable_index("i_v") == 4);
    CHECK_THROWS_AS((void)state_variable_index("x_q"), ConfigError);
}

TEST_CASE("simulate: constant rows from the disease-free start") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {0.9};
    cfg.initial_state = {1.0, 0.0, 0.0, 1.0, 0.0};
    cfg.h = 0.1;
    cfg.horizon = 5.0;
    run_simulate(cfg, dir.path);

    const auto lines = read_lines(dir.path / "trajectory_alpha0.90.csv");
    REQUIRE(lines.size() == 52); // header + horizon/h + 1 rows
    CHECK(lines[0] == "t,s_h,i_h,r_h,s_v,i_v");
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(lines[i].substr(lines[i].find(',')) == ",1,0,0,1,0");
}

TEST_CASE("simulate: rows are 17-significant-digit round-trip exact") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {0.95};
    cfg.h = 0.05;
    cfg.horizon = 10.0;
    run_simulate(cfg, dir.path);

    const auto f = make_system(cfg.params, FractionalOrder(0.95));
    const auto traj = solve(f, cfg.initial_state.to_array(), FractionalOrder(0.95),
                            TimeGrid(cfg.h, cfg.n_steps()));

    const auto lines = read_lines(dir.path / "trajectory_alpha0.95.csv");
    REQUIRE(lines.size() == traj.size() + 1);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::istringstream row(lines[k + 1]);
        std::string cell;
        std::getline(row, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == traj.time(k));
        for (double want : traj.state(k)) {
            std::getline(row, cell, ',');
            CHECK(std::strtod(cell.c_str(), nullptr) == want);
        }
    }
}

TEST_CASE("simulate: identical config produces byte-identical output") {
    TempDir dir1, dir2;
    ScenarioConfig cfg;
    cfg.alphas = {0.9, 1.0};
    cfg.h = 0.02;
    cfg.horizon = 20.0;
    run_simulate(cfg, dir1.path);
    run_simulate(cfg, dir2.path);
    for (const char* name : {"trajectory_alpha0.90.csv", "trajectory_alpha1.00.csv"}) {
        const std::string a = slurp(dir1.path / name), b = slurp(dir2.path / name);
        CHECK(!a.empty());
        CHECK(a == b);
    }
}

TEST_CASE("simulate: stride thins rows without touching the solve") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {1.0};
    cfg.h = 0.1;
    cfg.horizon = 10.0; // 101 grid points
    cfg.stride = 7;
    run_simulate(cfg, dir.path);
    const auto lines = read_lines(dir.path / "trajectory_alpha1.00.csv");
    CHECK(lines.size() == 1 + 15); // header + ceil(101/7)
}

TEST_CASE("simulate honors the outputs flags") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.outputs.trajectory = false;
    CHECK_THROWS_AS(run_simulate(cfg, dir.path), ConfigError);
}

TEST_CASE("phase: header, distinct-variable check, fixed point") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {1.0};
    cfg.initial_state = {1.0, 0.0, 0.0, 1.0, 0.0};
    cfg.h = 0.1;
    cfg.horizon = 2.0;
    run_phase(cfg, "s_h", "i_v", dir.path);
    const auto lines = read_lines(dir.path / "phase_s_h_i_v_alpha1.00.csv");
    REQUIRE(lines.size() == 22);
    CHECK(lines[0] == "s_h,i_v");
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i] == "1,0");

    CHECK_THROWS_AS(run_phase(cfg, "s_h", "s_h", dir.path), ConfigError);
    CHECK_THROWS_AS(run_phase(cfg, "s_h", "bogus", dir.path), ConfigError);
}

TEST_CASE("analyze: report fields match the in-memory report") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {1.0};
    run_analyze(cfg, dir.path);

    const json j = json::parse(slurp(dir.path / "report_alpha1.00.json"));
    const StabilityReport rep = full_report(cfg.params, FractionalOrder(1.0));
    CHECK(j.at("alpha").get<double>() == rep.alpha);
    CHECK(j.at("r0").get<double>() == rep.r0);
    CHECK(j.at("r0").get<double>() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(j.at("dfe_verdict").get<std::string>() == "unstable");
    REQUIRE(j.at("dfe_eigenvalues").size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(j.at("dfe_eigenvalues")[i][0].get<double>() == rep.dfe_eigenvalues[i].real());
        CHECK(j.at("dfe_eigenvalues")[i][1].get<double>() == rep.dfe_eigenvalues[i].imag());
    }
    REQUIRE(rep.endemic.has_value());
    CHECK(j.at("endemic").at("i_h_star").get<double>() == rep.endemic->i_h_star);
    CHECK(j.at("endemic").at("residual").get<double>() == rep.endemic->residual);
    CHECK(j.at("endemic").at("state").at("s_h").get<double>() == rep.endemic->state.s_h);
    CHECK(j.at("b1").get<double>() == rep.endemic->coefficients.b1);
    CHECK(j.at("b2").get<double>() == rep.endemic->coefficients.b2);
    CHECK(j.at("b3").get<double>() == rep.endemic->coefficients.b3);
    CHECK(j.at("discriminant").get<double>() == rep.endemic->discriminant);
    CHECK(j.at("proposition_branch").get<std::string>() == to_string(rep.endemic->branch));
    CHECK(j.at("endemic_verdict").get<std::string>() == to_string(rep.endemic->verdict));

    // round trip: the document re-parses to the same json value
    CHECK(json::parse(report_to_json(rep).dump(2)) == report_to_json(rep));
}

TEST_CASE("analyze: subthreshold scenario emits null endemic fields") {
    TempDir dir;
    ScenarioConfig cfg;
    cfg.alphas = {0.9};
    cfg.params.a *= 0.5; // pushes R0 below 1
    run_analyze(cfg, dir.path);
    const json j = json::parse(slurp(dir.path / "report_alpha0.90.json"));
    CHECK(j.at("dfe_verdict").get<std::string>() == "stable");
    CHECK(j.at("endemic").is_null());
    CHECK(j.at("b1").is_null());
    CHECK(j.at("discriminant").is_null());
    CHECK(j.at("proposition_branch").is_null());
    CHECK(j.at("endemic_verdict").is_null());
}

TEST_CASE("cli process: exit codes for success, config error, numerical failure") {
    TempDir dir;

    ScenarioConfig quick;
    quick.alphas = {1.0};
    quick.h = 0.1;
    quick.horizon = 5.0;
    const auto ok_cfg = write_json(dir, to_json(quick), "ok.json");
    CHECK(run_cli("simulate --config " + ok_cfg.string() + " --out " + dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "trajectory_alpha1.00.csv"));

    CHECK(run_cli("phase --config " + ok_cfg.string() + " --x s_h --y i_v --out " +
                  dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "phase_s_h_i_v_alpha1.00.csv"));

    CHECK(run_cli("analyze --config " + ok_cfg.string() + " --out " + dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "report_alpha1.00.json"));

    // usage/config errors
    CHECK(run_cli("simulate") == 1);
    CHECK(run_cli("bogus --config " + ok_cfg.string()) == 1);
    json bad = to_json(quick);
    bad["initial_state"]["s_h"] = 0.4; // breaks the simplex
    CHECK(run_cli("simulate --config " + write_json(dir, bad, "bad.json").string()) == 1);
    CHECK(run_cli("phase --config " + ok_cfg.string() + " --x s_h --y s_h --out " +
                  dir.path.string()) == 1);

    // numerical failure: an explosive death rate overflows within a few steps
    ScenarioConfig blow = quick;
    blow.params.delta = 1e10;
    blow.h = 10.0;
    blow.horizon = 200.0;
    const auto blow_cfg = write_json(dir, to_json(blow), "blow.json");
    CHECK(run_cli("simulate --config " + blow_cfg.string() + " --out " + dir.path.string()) == 2);
}

} // TEST_SUITE
