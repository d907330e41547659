#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hr13/runner/config.hpp"
#include "hr13/runner/report.hpp"
#include "hr13/runner/scenarios.hpp"

using namespace hr13::runner;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("strict config parsing") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"module":"algebra","scenario":"jacobi","extra":1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"module":"algebra"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"module":"algebra","scenario":"jacobi","seed":1.5})"), ConfigError);
  const auto cfg = parse_config(R"({"module":"reps","scenario":"casimir","seed":4,"params":{"sl":1}})");
  CHECK(cfg.module == "reps");
  CHECK(*cfg.seed == 4);
}

TEST_CASE("validation fills defaults and rejects unknown or mistyped parameters") {
  auto cfg = validate(parse_config(R"({"module":"reps","scenario":"casimir","params":{"sl":1}})"));
  CHECK(cfg.params.at("sl").get<double>() == 1.0);
  CHECK(cfg.params.contains("sr"));
  CHECK_THROWS_AS(validate(parse_config(R"({"module":"reps","scenario":"casimir","params":{"bogus":1}})")),
                  ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"module":"reps","scenario":"casimir","params":{"sl":"x"}})")),
                  ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"module":"reps","scenario":"check","params":{"cutoff":4.5}})")),
                  ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"module":"nope","scenario":"x"})")), ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"module":"classical","scenario":"plane-wave"})")), ConfigError);
  CHECK_NOTHROW(validate(parse_config(R"({"module":"classical","scenario":"plane-wave","seed":3})")));
  CHECK_THROWS_AS(
      validate(parse_config(R"({"module":"classical","scenario":"constant-b","params":{"B":[0,0]}})")),
      ConfigError);
  CHECK_NOTHROW(validate(parse_config(R"({"module":"algebra","scenario":"contraction","params":{"c_values":[10,100]}})")));
}

TEST_CASE("deterministic JSON: sorted keys, 17 digits, non-finite as strings") {
  Json j;
  j["b"] = 0.1;
  j["a"] = std::numeric_limits<double>::infinity();
  j["c"] = {{"z", 1}, {"y", std::nan("")}};
  const auto s = dump_deterministic(j, -1);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"inf\"") != std::string::npos);
  CHECK(s.find("\"nan\"") != std::string::npos);
  CHECK(s.find("\"y\"") < s.find("\"z\""));
  CHECK(format_double(-0.5) == "-0.5");
}

TEST_CASE("CSV tables carry a versioned schema line") {
  CsvTable t("demo", 3, {"a", "b"});
  t.row({1.0, 0.25});
  const auto s = t.str();
  CHECK(s.rfind("# hr13 demo v3\na,b\n1,0.25\n", 0) == 0);
  CHECK_THROWS(t.row({1.0}));
}

TEST_CASE("every invariant suite is reachable from some scenario") {
  std::set<std::string> covered;
  for (const auto& s : registry())
    for (const auto& suite : s.suites) covered.insert(suite);
  for (const auto& suite : invariant_suites()) {
    CAPTURE(suite);
    CHECK(covered.count(suite) == 1);
  }
  for (const auto& suite : covered) {
    CAPTURE(suite);
    CHECK(std::find(invariant_suites().begin(), invariant_suites().end(), suite) != invariant_suites().end());
  }
}

TEST_CASE("reports: exit codes and artifacts") {
  const auto ok = validate(parse_config(R"({"module":"reps","scenario":"casimir"})"));
  const auto r = run_scenario(ok, std::nullopt);
  CHECK(r.passed());
  CHECK(r.exit_code() == ExitCode::ok);

  const auto bad = validate(parse_config(R"({"module":"reps","scenario":"casimir","params":{"sl":0.3}})"));
  const auto e = run_scenario(bad, std::nullopt);
  REQUIRE(e.error);
  CHECK(e.error->kind == "precondition");
  CHECK(e.exit_code() == ExitCode::precondition);

  Check failing{"x", "algebra.jacobi", "le", 2.0, std::nullopt, 1.0, false};
  RunReport f;
  f.checks.push_back(failing);
  CHECK(f.exit_code() == ExitCode::check_failed);
  RunReport n;
  n.error = RunError{"numerical", "boom"};
  CHECK(n.exit_code() == ExitCode::numerical);
  CHECK(to_json(n).at("exit_code") == 4);
  CHECK(emit_report(f, Format::text).find("FAIL") != std::string::npos);
}

TEST_CASE("identical configs write byte-identical artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "hr13_runner_determinism";
  std::filesystem::remove_all(dir);
  const auto cfg =
      validate(parse_config(R"({"module":"classical","scenario":"plane-wave","seed":11,"params":{"n_steps":200}})"));
  run_scenario(cfg, dir / "a");
  run_scenario(cfg, dir / "b");
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "a")) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(dir / "b" / entry.path().filename()));
  }
  CHECK(files >= 2);
  CHECK(slurp(dir / "a" / "report.json").find("wall") == std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory resolution") {
  ScenarioConfig cfg;
  cfg.module = "field";
  cfg.scenario = "check";
  CHECK(resolve_out_dir(std::string("x/y"), cfg) == std::filesystem::path("x/y"));
  ::setenv("HR13_OUT_DIR", "/tmp/root", 1);
  CHECK(resolve_out_dir(std::nullopt, cfg) == std::filesystem::path("/tmp/root/field-check"));
  ::unsetenv("HR13_OUT_DIR");
  CHECK(resolve_out_dir(std::nullopt, cfg) == std::filesystem::path("hr13_out/field-check"));
}
