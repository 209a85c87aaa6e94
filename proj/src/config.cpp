#include "fracmal/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace fracmal {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError("config: " + message);
}

void check_known_keys(const json& j, const char* where,
                      const std::set<std::string>& known) {
    for (const auto& [key, _] : j.items())
        if (!known.contains(key)) fail(std::string(where) + ": unknown key '" + key + "'");
}

double get_number(const json& j, const char* where, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string(where) + ": missing key '" + key + "'");
    if (!it->is_number()) fail(std::string(where) + ": '" + key + "' must be a number");
    return it->get<double>();
}

ModelParams params_from_json(const json& j) {
    check_known_keys(j, "params",
                     {"a", "b", "c", "m", "nu", "gamma", "r", "delta", "lambda_h", "lambda_v"});
    ModelParams p{};
    p.a = get_number(j, "params", "a");
    p.b = get_number(j, "params", "b");
    p.c = get_number(j, "params", "c");
    p.m = get_number(j, "params", "m");
    p.nu = get_number(j, "params", "nu");
    p.gamma = get_number(j, "params", "gamma");
    p.r = get_number(j, "params", "r");
    p.delta = get_number(j, "params", "delta");
    p.lambda_h = get_number(j, "params", "lambda_h");
    p.lambda_v = get_number(j, "params", "lambda_v");
    return p;
}

EpiState state_from_json(const json& j) {
    check_known_keys(j, "initial_state", {"s_h", "i_h", "r_h", "s_v", "i_v"});
    return {get_number(j, "initial_state", "s_h"), get_number(j, "initial_state", "i_h"),
            get_number(j, "initial_state", "r_h"), get_number(j, "initial_state", "s_v"),
            get_number(j, "initial_state", "i_v")};
}

} // namespace

void ScenarioConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }

    if (alphas.empty()) fail("alphas must be non-empty");
    for (double a : alphas)
        if (!(a > 0.0) || !(a <= 1.0)) fail("alphas entries must lie in (0, 1]");

    const auto [dh, dv] = simplex_defect(initial_state);
    if (std::abs(dh) > 1e-12)
        fail("initial_state human simplex defect " + std::to_string(dh) + " exceeds 1e-12");
    if (std::abs(dv) > 1e-12)
        fail("initial_state vector simplex defect " + std::to_string(dv) + " exceeds 1e-12");
    for (double v : initial_state.to_array())
        if (!(v >= 0.0) || !(v <= 1.0)) fail("initial_state components must lie in [0, 1]");

    if (!(h > 0.0)) fail("h must be positive");
    if (!(horizon > 0.0)) fail("horizon must be positive");
    if (horizon / h > 1e7) fail("horizon/h exceeds the 1e7-step guard");
    if (stride < 1) fail("stride must be >= 1");
}

std::size_t ScenarioConfig::n_steps() const {
    return static_cast<std::size_t>(std::llround(horizon / h));
}

ScenarioConfig config_from_json(const json& j) {
    check_known_keys(j, "config",
                     {"params", "alphas", "initial_state", "h", "horizon", "outputs", "stride"});

    ScenarioConfig cfg;
    if (j.contains("params")) cfg.params = params_from_json(j.at("params"));
    if (j.contains("alphas")) {
        if (!j.at("alphas").is_array()) fail("alphas must be an array");
        cfg.alphas = j.at("alphas").get<std::vector<double>>();
    }
    if (j.contains("initial_state")) cfg.initial_state = state_from_json(j.at("initial_state"));
    if (j.contains("h")) cfg.h = get_number(j, "config", "h");
    if (j.contains("horizon")) cfg.horizon = get_number(j, "config", "horizon");
    if (j.contains("stride")) {
        if (!j.at("stride").is_number_unsigned()) fail("stride must be a non-negative integer");
        cfg.stride = j.at("stride").get<std::size_t>();
    }
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        check_known_keys(o, "outputs", {"trajectory", "phase", "report"});
        if (o.contains("trajectory")) cfg.outputs.trajectory = o.at("trajectory").get<bool>();
        if (o.contains("phase")) cfg.outputs.phase = o.at("phase").get<bool>();
        if (o.contains("report")) cfg.outputs.report = o.at("report").get<bool>();
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("parse error in '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json to_json(const ScenarioConfig& cfg) {
    return json{
        {"params",
         {{"a", cfg.params.a},
          {"b", cfg.params.b},
          {"c", cfg.params.c},
          {"m", cfg.params.m},
          {"nu", cfg.params.nu},
          {"gamma", cfg.params.gamma},
          {"r", cfg.params.r},
          {"delta", cfg.params.delta},
          {"lambda_h", cfg.params.lambda_h},
          {"lambda_v", cfg.params.lambda_v}}},
        {"alphas", cfg.alphas},
        {"initial_state",
         {{"s_h", cfg.initial_state.s_h},
          {"i_h", cfg.initial_state.i_h},
          {"r_h", cfg.initial_state.r_h},
          {"s_v", cfg.initial_state.s_v},
          {"i_v", cfg.initial_state.i_v}}},
        {"h", cfg.h},
        {"horizon", cfg.horizon},
        {"outputs",
         {{"trajectory", cfg.outputs.trajectory},
          {"phase", cfg.outputs.phase},
          {"report", cfg.outputs.report}}},
        {"stride", cfg.stride},
    };
}

} // namespace fracmal
