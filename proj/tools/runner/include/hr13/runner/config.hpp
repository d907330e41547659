#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace hr13::runner {

/// Malformed or schema-violating configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string module;
  std::string scenario;
  std::optional<std::int64_t> seed;
  nlohmann::json params = nlohmann::json::object();
};

/// Strict parse: top-level keys are limited to module, scenario, seed and params.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Checks module/scenario against the registry, rejects unknown parameters and
/// mistyped values, fills defaults, and requires a seed for randomized
/// scenarios. Returns the completed config.
ScenarioConfig validate(ScenarioConfig cfg);

nlohmann::json config_echo(const ScenarioConfig& cfg);

}  // namespace hr13::runner
