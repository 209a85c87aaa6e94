#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fracmal/analysis.hpp"
#include "fracmal/config.hpp"

#include <json.hpp>

namespace fracmal {

/// "1.00", "0.99", ... — two decimals, four when two would be lossy
/// (0.999 -> "0.9990").
std::string format_alpha(double alpha);

/// Index of a state variable name in {s_h, i_h, r_h, s_v, i_v}; throws
/// ConfigError for unknown names.
std::size_t state_variable_index(std::string_view name);

/// Report serialization used by the analyze command. Keys: alpha, r0,
/// dfe_eigenvalues ([re, im] pairs), dfe_verdict, endemic (null or
/// {state, i_h_star, residual}), b1, b2, b3, discriminant,
/// proposition_branch, endemic_verdict; the six endemic-derived keys are
/// null when no endemic point exists.
nlohmann::json report_to_json(const StabilityReport& report);

/// One trajectory CSV per alpha named trajectory_alpha<v>.csv with header
/// t,s_h,i_h,r_h,s_v,i_v; rows at stride intervals, 17 significant digits.
void run_simulate(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// One phase CSV per alpha named phase_<x>_<y>_alpha<v>.csv with header <x>,<y>.
void run_phase(const ScenarioConfig& config, std::string_view x_var, std::string_view y_var,
               const std::filesystem::path& out_dir);

/// One JSON report per alpha named report_alpha<v>.json.
void run_analyze(const ScenarioConfig& config, const std::filesystem::path& out_dir);

} // namespace fracmal
