#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mec/bench.hpp"
#include "mec/combine.hpp"

namespace mec {

/// Run configuration shared by the CLI commands.
///
///   {
///     "lambda_grid": [1.0, 0.5, 0] | {"count": 16, "min_ratio": 0.01, "include_zero": true},
///     "combiner": "weighted" | "select",
///     "tau": 0,
///     "whiten": false,
///     "use_gamma": true,
///     "prior_weight": 1.0,
///     "m_grid_max_exponent": 40,
///     "seed": 12345,
///     "scenario": {"n": 6, "default_model": "analytic" | "fitted", "fitted_draws": 10000,
///                  "center_base": true}
///   }
///
/// Every key is optional; unknown keys are rejected with ConfigError.
struct RunConfig {
    DetectConfig detect;
    int m_grid_max_exponent = 40;
    std::optional<std::uint64_t> seed;
    int n = 6;
    DefaultModelMode default_model = DefaultModelMode::analytic;
    int fitted_draws = 10000;
    bool center_base = true;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Human-readable summary of the keys and defaults, for --help output.
std::string run_config_help();

}  // namespace mec
