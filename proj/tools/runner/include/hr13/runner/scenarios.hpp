#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hr13/runner/config.hpp"
#include "hr13/runner/report.hpp"

namespace hr13::runner {

/// Versioned CSV artifact: a "# hr13 <schema> v<version>" comment line, the
/// column header, then one row per record.
class CsvTable {
public:
  CsvTable(std::string schema, int version, std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  std::string str() const;

private:
  std::string schema_;
  int version_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

class ScenarioContext {
public:
  ScenarioContext(const Json& params, std::optional<std::int64_t> seed);

  const Json& params() const { return params_; }
  double num(const std::string& key) const;
  long integer(const std::string& key) const;
  std::vector<double> vec(const std::string& key) const;
  std::string str(const std::string& key) const;
  /// Guaranteed present for scenarios registered as randomized.
  std::uint64_t seed() const;

  /// measured <= limit.
  void check_le(const std::string& suite, const std::string& name, double measured, double limit);
  /// measured >= limit.
  void check_ge(const std::string& suite, const std::string& name, double measured, double limit);
  /// |measured − expected| <= tolerance.
  void check_close(const std::string& suite, const std::string& name, double measured, double expected,
                   double tolerance);
  void check_true(const std::string& suite, const std::string& name, bool ok);

  void artifact(const std::string& name, std::string content);

  std::vector<Check> checks;
  std::map<std::string, std::string> files;

private:
  const Json& params_;
  std::optional<std::int64_t> seed_;
};

struct ScenarioSpec {
  std::string module;
  std::string name;
  std::vector<std::string> suites;
  bool randomized = false;
  Json defaults = Json::object();  ///< parameter name → default (its type is enforced)
  /// Array parameters whose length may differ from the default's.
  std::vector<std::string> variable_length;
  std::function<void(ScenarioContext&)> run;
};

/// Every module invariant suite; each must be reachable from some scenario.
const std::vector<std::string>& invariant_suites();

const std::vector<ScenarioSpec>& registry();
const ScenarioSpec* find_scenario(const std::string& module, const std::string& name);

/// Runs a validated config. Output files are written into `out_dir` (created
/// if needed), including report.json; precondition and numerical errors are
/// captured in the report.
RunReport run_scenario(const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& out_dir);

/// --out, else $HR13_OUT_DIR/<module>-<scenario>, else ./hr13_out/<module>-<scenario>.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag, const ScenarioConfig& cfg);

// Scenario tables contributed by each module.
std::vector<ScenarioSpec> algebra_scenarios();
std::vector<ScenarioSpec> reps_scenarios();
std::vector<ScenarioSpec> classical_scenarios();
std::vector<ScenarioSpec> quantum_scenarios();
std::vector<ScenarioSpec> field_scenarios();

}  // namespace hr13::runner
