#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hr13/runner/config.hpp"
#include "hr13/runner/report.hpp"
#include "hr13/runner/scenarios.hpp"

namespace {

using namespace hr13::runner;

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::string format = "text";
  std::optional<std::int64_t> seed;
};

/// A subcommand bound to one module; `overrides` turns dedicated flags into params.
struct Command {
  CLI::App* app = nullptr;
  std::string module;
  std::string default_scenario;  ///< empty when --scenario or --config must name one
  std::string scenario;
  CommonFlags flags;
  std::function<void(Json&)> overrides = [](Json&) {};
};

void add_common(Command& c) {
  c.app->add_option("--config", c.flags.config_path, "JSON scenario config");
  c.app->add_option("--out", c.flags.out, "output directory");
  c.app->add_option("--format", c.flags.format, "report format on stdout")->check(CLI::IsMember({"json", "text"}));
  c.app->add_option("--seed", c.flags.seed, "seed for randomized suites");
}

ScenarioConfig build_config(const Command& c) {
  ScenarioConfig cfg;
  if (!c.flags.config_path.empty()) {
    cfg = load_config(c.flags.config_path);
    if (!c.module.empty() && cfg.module != c.module)
      throw ConfigError("config names module '" + cfg.module + "' but the command is '" + c.module + "'");
    if (!c.scenario.empty() && cfg.scenario != c.scenario)
      throw ConfigError("config names scenario '" + cfg.scenario + "' but --scenario is '" + c.scenario + "'");
  } else {
    if (c.module.empty()) throw ConfigError("run needs --config");
    cfg.module = c.module;
    cfg.scenario = c.scenario.empty() ? c.default_scenario : c.scenario;
    if (cfg.scenario.empty()) throw ConfigError("--scenario or --config is required");
  }
  if (c.flags.seed) cfg.seed = c.flags.seed;
  c.overrides(cfg.params);
  return validate(std::move(cfg));
}

int execute(const Command& c) {
  ScenarioConfig cfg;
  try {
    cfg = build_config(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config_error);
  }
  const auto out_dir = resolve_out_dir(c.flags.out.empty() ? std::nullopt : std::optional(c.flags.out), cfg);
  RunReport report;
  try {
    report = run_scenario(cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::config_error);
  }
  std::cout << emit_report(report, c.flags.format == "json" ? Format::json : Format::text);
  std::cerr << "wall time: " << report.wall_time_s << " s, artifacts in " << out_dir.string() << "\n";
  return static_cast<int>(report.exit_code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hr13: scenario runner for the H_R(1,3) numerical laboratory"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](CLI::App* parent, const std::string& name, const std::string& help, std::string module,
                  std::string default_scenario) -> Command& {
    auto c = std::make_unique<Command>();
    c->app = parent->add_subcommand(name, help);
    c->module = std::move(module);
    c->default_scenario = std::move(default_scenario);
    add_common(*c);
    commands.push_back(std::move(c));
    return *commands.back();
  };

  auto* algebra = app.add_subcommand("algebra", "structure-constant checks")->require_subcommand(1);
  auto& algebra_check = make(algebra, "check", "Jacobi sweep or contraction limit", "algebra", "jacobi");
  algebra_check.app->add_option("--scenario", algebra_check.scenario, "jacobi or contraction");

  auto* reps = app.add_subcommand("reps", "operator representations")->require_subcommand(1);
  auto& casimir = make(reps, "casimir", "Casimir values of an (s_L, s_R) representation", "reps", "casimir");
  auto sl = std::make_shared<std::optional<double>>();
  auto sr = std::make_shared<std::optional<double>>();
  casimir.app->add_option("--sl", *sl, "left spin");
  casimir.app->add_option("--sr", *sr, "right spin");
  casimir.overrides = [sl, sr](Json& p) {
    if (*sl) p["sl"] = **sl;
    if (*sr) p["sr"] = **sr;
  };
  auto& reps_check = make(reps, "check", "bracket suites on truncated representations", "reps", "check");
  reps_check.app->add_option("--scenario", reps_check.scenario,
                             "check, casimir-table, composite, onshell or contracted-boost");
  auto cutoff = std::make_shared<std::optional<long>>();
  reps_check.app->add_option("--cutoff", *cutoff, "oscillator levels per mode");
  reps_check.overrides = [cutoff](Json& p) {
    if (*cutoff) p["cutoff"] = **cutoff;
  };

  auto* classical = app.add_subcommand("classical", "covariant classical flows")->require_subcommand(1);
  auto& classical_run = make(classical, "run", "integrate a classical scenario", "classical", "");
  classical_run.app->add_option("--scenario", classical_run.scenario,
                                "free, constant-b, constant-e, crossed, plane-wave or two-body-harmonic");

  auto* quantum = app.add_subcommand("quantum", "grid wavefunctions")->require_subcommand(1);
  auto& quantum_run = make(quantum, "run", "run a quantum scenario", "quantum", "free-packet");
  quantum_run.app->add_option("--scenario", quantum_run.scenario,
                              "free-packet, klein-gordon, spectral-derivative, commutator or offshell");

  auto* field = app.add_subcommand("field", "Fock-space scalar field")->require_subcommand(1);
  auto& field_check = make(field, "check", "ladder, normalization, exchange and hermiticity suites", "field", "check");
  auto modes = std::make_shared<std::optional<long>>();
  auto nmax = std::make_shared<std::optional<long>>();
  field_check.app->add_option("--modes", *modes, "number of lattice modes");
  field_check.app->add_option("--nmax", *nmax, "maximum total occupation");
  field_check.overrides = [modes, nmax](Json& p) {
    if (*modes) p["modes"] = **modes;
    if (*nmax) p["n_max"] = **nmax;
  };
  auto& correlator = make(field, "correlator", "vacuum two-point function under lattice refinement", "field",
                          "correlator");
  auto x = std::make_shared<std::vector<double>>();
  auto y = std::make_shared<std::vector<double>>();
  correlator.app->add_option("--x", *x, "first point x^mu")->expected(4);
  correlator.app->add_option("--y", *y, "second point y^mu")->expected(4);
  correlator.overrides = [x, y](Json& p) {
    if (!x->empty()) p["x"] = *x;
    if (!y->empty()) p["y"] = *y;
  };

  make(&app, "run", "run any scenario from a config", "", "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::config_error);
  }
  for (const auto& c : commands)
    if (c->app->parsed()) return execute(*c);
  return static_cast<int>(ExitCode::config_error);
}
