#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "marketsim/experiments.hpp"

namespace marketsim {

// Raised for unknown keys, type mismatches, and constraint violations; the
// message names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Top-level document: sections model_params and sim_config (all fields
// optional, defaults documented in the README), plus optional sweep and
// grid sections.
struct ConfigFile {
    SimConfig sim_config;  // embeds model_params
    std::optional<SweepSpec> sweep;
    std::optional<GridSpec> grid;
};

ConfigFile parse_config(const nlohmann::json& doc);
ConfigFile load_config(const std::string& path);  // throws ConfigError / runtime_error

}  // namespace marketsim
