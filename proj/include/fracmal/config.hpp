#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracmal/model.hpp"
#include "fracmal/types.hpp"

#include <json.hpp>

namespace fracmal {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputFlags {
    bool trajectory = true;
    bool phase = true;
    bool report = true;
};

/// One batch scenario: biology, the alpha sweep, the start state and grid.
/// Defaults mirror the shipped scenario: alphas {1, 0.99, 0.95, 0.90},
/// h = 0.01, horizon = 200.
struct ScenarioConfig {
    ModelParams params = ModelParams::defaults();
    std::vector<double> alphas = {1.0, 0.99, 0.95, 0.90};
    EpiState initial_state = {0.8, 0.2, 0.0, 0.9, 0.1};
    double h = 0.01;
    double horizon = 200.0;
    OutputFlags outputs;
    std::size_t stride = 1;

    /// Throws ConfigError naming the violated invariant. Checks the alpha
    /// list, exact simplex constraints on the initial state (defect above
    /// 1e-12 is a load error), and the 1e7-step guard on horizon/h.
    void validate() const;

    std::size_t n_steps() const;
};

/// Parse and validate a JSON scenario file. Unknown keys are rejected;
/// omitted optional keys take the defaults above. Parse failures carry the
/// file name and position diagnostics.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Inverse of load_config modulo defaults: emits every field explicitly.
nlohmann::json to_json(const ScenarioConfig& config);

ScenarioConfig config_from_json(const nlohmann::json& j);

} // namespace fracmal
