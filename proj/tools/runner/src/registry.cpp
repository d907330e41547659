#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "hr13/errors.hpp"
#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

CsvTable::CsvTable(std::string schema, int version, std::vector<std::string> columns)
    : schema_(std::move(schema)), version_(version), columns_(std::move(columns)) {}

void CsvTable::row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw std::logic_error("CSV row width does not match header");
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ",";
    line += format_double(values[i]);
  }
  rows_.push_back(std::move(line));
}

std::string CsvTable::str() const {
  std::string out = "# hr13 " + schema_ + " v" + std::to_string(version_) + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& r : rows_) out += r + "\n";
  return out;
}

// ---------------------------------------------------------------------------

ScenarioContext::ScenarioContext(const Json& params, std::optional<std::int64_t> seed)
    : params_(params), seed_(seed) {}

double ScenarioContext::num(const std::string& key) const { return params_.at(key).get<double>(); }
long ScenarioContext::integer(const std::string& key) const { return params_.at(key).get<long>(); }
std::vector<double> ScenarioContext::vec(const std::string& key) const {
  return params_.at(key).get<std::vector<double>>();
}
std::string ScenarioContext::str(const std::string& key) const { return params_.at(key).get<std::string>(); }

std::uint64_t ScenarioContext::seed() const {
  if (!seed_) throw ConfigError("this scenario requires a seed");
  return static_cast<std::uint64_t>(*seed_);
}

void ScenarioContext::check_le(const std::string& suite, const std::string& name, double measured, double limit) {
  checks.push_back({name, suite, "le", measured, std::nullopt, limit, measured <= limit});
}

void ScenarioContext::check_ge(const std::string& suite, const std::string& name, double measured, double limit) {
  checks.push_back({name, suite, "ge", measured, std::nullopt, limit, measured >= limit});
}

void ScenarioContext::check_close(const std::string& suite, const std::string& name, double measured,
                                  double expected, double tolerance) {
  checks.push_back(
      {name, suite, "close", measured, expected, tolerance, std::fabs(measured - expected) <= tolerance});
}

void ScenarioContext::check_true(const std::string& suite, const std::string& name, bool ok) {
  checks.push_back({name, suite, "true", ok ? 1.0 : 0.0, 1.0, 0.0, ok});
}

void ScenarioContext::artifact(const std::string& name, std::string content) { files[name] = std::move(content); }

// ---------------------------------------------------------------------------

const std::vector<std::string>& invariant_suites() {
  static const std::vector<std::string> suites{
      "algebra.antisymmetry",      "algebra.jacobi",           "algebra.central",
      "algebra.poincare",          "algebra.contraction",      "algebra.inverse-rescaling",
      "reps.brackets",             "reps.casimir",             "reps.truncation-localization",
      "reps.composite",            "reps.onshell",             "reps.contracted-boost",
      "classical.pi2",             "classical.hamiltonian",    "classical.analytic",
      "classical.p2",              "classical.symplectic",     "classical.reversibility",
      "classical.ht-crosscheck",   "classical.proper-time",    "classical.two-body",
      "classical.frame-fix",       "quantum.unitarity",        "quantum.spectral-derivative",
      "quantum.ehrenfest",         "quantum.classical-match",  "quantum.commutator",
      "quantum.klein-gordon",      "quantum.offshell",         "field.ladder",
      "field.number",              "field.normalization",      "field.exchange",
      "field.hermiticity",         "field.refinement",
  };
  return suites;
}

const std::vector<ScenarioSpec>& registry() {
  static const std::vector<ScenarioSpec> all = [] {
    std::vector<ScenarioSpec> v;
    for (auto part : {algebra_scenarios(), reps_scenarios(), classical_scenarios(), quantum_scenarios(),
                      field_scenarios()})
      for (auto& s : part) v.push_back(std::move(s));
    return v;
  }();
  return all;
}

const ScenarioSpec* find_scenario(const std::string& module, const std::string& name) {
  for (const auto& s : registry())
    if (s.module == module && s.name == name) return &s;
  return nullptr;
}

std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag, const ScenarioConfig& cfg) {
  if (flag) return *flag;
  const std::string leaf = cfg.module + "-" + cfg.scenario;
  if (const char* env = std::getenv("HR13_OUT_DIR"); env && *env) return std::filesystem::path(env) / leaf;
  return std::filesystem::path("hr13_out") / leaf;
}

RunReport run_scenario(const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& out_dir) {
  RunReport report;
  report.config = config_echo(cfg);
  const ScenarioSpec* spec = find_scenario(cfg.module, cfg.scenario);
  if (!spec) throw ConfigError("unknown scenario '" + cfg.module + "/" + cfg.scenario + "'");

  ScenarioContext ctx(cfg.params, cfg.seed);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    spec->run(ctx);
  } catch (const ConfigError& e) {
    report.error = RunError{"config", e.what()};
  } catch (const PreconditionError& e) {
    report.error = RunError{"precondition", e.what()};
  } catch (const NumericalError& e) {
    report.error = RunError{"numerical", e.what()};
  } catch (const std::invalid_argument& e) {
    report.error = RunError{"precondition", e.what()};
  } catch (const std::exception& e) {
    report.error = RunError{"numerical", e.what()};
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.checks = std::move(ctx.checks);
  for (const auto& [name, content] : ctx.files) report.artifacts.push_back(name);
  report.artifacts.push_back("report.json");

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    for (const auto& [name, content] : ctx.files) {
      std::ofstream(*out_dir / name, std::ios::binary) << content;
    }
    std::ofstream(*out_dir / "report.json", std::ios::binary) << emit_report(report, Format::json);
  }
  return report;
}

}  // namespace hr13::runner
