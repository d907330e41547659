#include "hr13/runner/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

namespace {

using Json = nlohmann::json;

std::string type_name(const Json& j) { return j.type_name(); }

Json coerce(const std::string& key, const Json& def, const Json& given, bool variable_length) {
  if (def.is_number_float()) {
    if (!given.is_number()) throw ConfigError("parameter '" + key + "' must be a number, got " + type_name(given));
    return Json(given.get<double>());
  }
  if (def.is_number_integer()) {
    if (!given.is_number_integer())
      throw ConfigError("parameter '" + key + "' must be an integer, got " + type_name(given));
    return given;
  }
  if (def.is_boolean()) {
    if (!given.is_boolean()) throw ConfigError("parameter '" + key + "' must be a boolean");
    return given;
  }
  if (def.is_string()) {
    if (!given.is_string()) throw ConfigError("parameter '" + key + "' must be a string");
    return given;
  }
  if (def.is_array()) {
    if (!given.is_array()) throw ConfigError("parameter '" + key + "' must be an array");
    if (!variable_length && given.size() != def.size())
      throw ConfigError("parameter '" + key + "' must have " + std::to_string(def.size()) + " entries");
    if (variable_length && given.empty()) throw ConfigError("parameter '" + key + "' must not be empty");
    Json out = Json::array();
    const bool integral = !def.empty() && def[0].is_number_integer();
    for (const auto& v : given) {
      if (integral ? !v.is_number_integer() : !v.is_number())
        throw ConfigError("parameter '" + key + "' must contain only " + (integral ? "integers" : "numbers"));
      out.push_back(integral ? v : Json(v.get<double>()));
    }
    return out;
  }
  throw ConfigError("parameter '" + key + "' has an unsupported default type");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "module" && key != "scenario" && key != "seed" && key != "params")
      throw ConfigError("unknown top-level key '" + key + "'");

  ScenarioConfig cfg;
  if (!j.contains("module") || !j["module"].is_string()) throw ConfigError("'module' must be a string");
  if (!j.contains("scenario") || !j["scenario"].is_string()) throw ConfigError("'scenario' must be a string");
  cfg.module = j["module"];
  cfg.scenario = j["scenario"];
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("'seed' must be an integer");
    cfg.seed = j["seed"].get<std::int64_t>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("'params' must be an object");
    cfg.params = j["params"];
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ScenarioConfig validate(ScenarioConfig cfg) {
  static const std::vector<std::string> modules{"algebra", "reps", "classical", "quantum", "field"};
  if (std::find(modules.begin(), modules.end(), cfg.module) == modules.end())
    throw ConfigError("unknown module '" + cfg.module + "'");
  const ScenarioSpec* spec = find_scenario(cfg.module, cfg.scenario);
  if (!spec) throw ConfigError("unknown scenario '" + cfg.scenario + "' for module '" + cfg.module + "'");

  Json filled = spec->defaults;
  for (const auto& [key, value] : cfg.params.items()) {
    if (!spec->defaults.contains(key))
      throw ConfigError("unknown parameter '" + key + "' for scenario " + cfg.module + "/" + cfg.scenario);
    const bool variable = std::find(spec->variable_length.begin(), spec->variable_length.end(), key) !=
                          spec->variable_length.end();
    filled[key] = coerce(key, spec->defaults[key], value, variable);
  }
  cfg.params = std::move(filled);
  if (spec->randomized && !cfg.seed)
    throw ConfigError("scenario " + cfg.module + "/" + cfg.scenario + " is randomized and requires a seed");
  return cfg;
}

nlohmann::json config_echo(const ScenarioConfig& cfg) {
  Json j;
  j["module"] = cfg.module;
  j["scenario"] = cfg.scenario;
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  j["params"] = cfg.params;
  return j;
}

}  // namespace hr13::runner
