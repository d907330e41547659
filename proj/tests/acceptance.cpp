// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hr13/runner/config.hpp"
#include "hr13/runner/scenarios.hpp"

using namespace hr13::runner;

namespace {

struct Run {
  RunReport report;
  double seconds = 0.0;
};

Run run(const std::string& config_json) {
  const auto cfg = validate(parse_config(config_json));
  const auto t0 = std::chrono::steady_clock::now();
  Run r{run_scenario(cfg, std::nullopt), 0.0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Passes when the run finished without error and every check in `suites`
/// passed; at least one such check must exist.
bool suites_pass(const RunReport& r, const std::vector<std::string>& suites, std::string& detail) {
  if (r.error) {
    detail += " error(" + r.error->kind + "): " + r.error->message;
    return false;
  }
  int n = 0;
  bool ok = true;
  for (const auto& c : r.checks)
    for (const auto& s : suites)
      if (c.suite == s) {
        ++n;
        if (!c.pass) {
          ok = false;
          detail += " failed " + c.suite + ":" + c.name + " measured=" + format_double(c.measured);
        }
      }
  if (n == 0) detail += " no checks in requested suites";
  return ok && n > 0;
}

std::string seconds(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3gs", t);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Criterion {
  std::string id;
  std::string summary;
  std::function<bool(std::string&)> evaluate;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({"AC1", "algebra antisymmetry and Jacobi over 455 triples, exact, < 1 s", [](std::string& d) {
                        const auto r = run(R"({"module":"algebra","scenario":"jacobi"})");
                        d += " time=" + seconds(r.seconds);
                        return suites_pass(r.report, {"algebra.antisymmetry", "algebra.jacobi"}, d) && r.seconds < 1.0;
                      }});

  criteria.push_back({"AC2", "representation brackets on interiors (cutoff 8, s <= 1) <= 1e-12, < 10 s",
                      [](std::string& d) {
                        const auto r = run(
                            R"({"module":"reps","scenario":"check","params":{"cutoff":8,"max_spin":1.0,"tolerance":1e-12}})");
                        d += " time=" + seconds(r.seconds);
                        return suites_pass(r.report, {"reps.brackets"}, d) && r.seconds < 10.0;
                      }});

  criteria.push_back({"AC3", "Casimir table 2hbar^2[l(l+1) +- r(r+1)] for 2s <= 2", [](std::string& d) {
                        const auto r = run(R"({"module":"reps","scenario":"casimir-table","params":{"max_spin":1.0}})");
                        return suites_pass(r.report, {"reps.casimir"}, d);
                      }});

  criteria.push_back({"AC4", "contraction: power >= 1, exact [U,H] and [K,Y], K -> PT at O(1/c)",
                      [](std::string& d) {
                        const auto a = run(
                            R"({"module":"algebra","scenario":"contraction","params":{"c_values":[10,100,1000,10000,100000,1000000]}})");
                        const auto b = run(R"({"module":"reps","scenario":"contracted-boost"})");
                        const bool pa = suites_pass(a.report, {"algebra.contraction"}, d);
                        const bool pb = suites_pass(b.report, {"reps.contracted-boost"}, d);
                        return pa && pb;
                      }});

  criteria.push_back({"AC5", "constant B and E: closed form <= 1e-6, pi.pi drift <= 1e-8, p.p change <= 1e-6",
                      [](std::string& d) {
                        const auto b = run(
                            R"({"module":"classical","scenario":"constant-b","params":{"step":1e-3,"n_steps":10000}})");
                        const auto e = run(
                            R"({"module":"classical","scenario":"constant-e","params":{"step":1e-3,"n_steps":10000}})");
                        const std::vector<std::string> s{"classical.analytic", "classical.pi2", "classical.p2"};
                        const bool pb = suites_pass(b.report, s, d);
                        const bool pe = suites_pass(e.report, s, d);
                        return pb && pe;
                      }});

  criteria.push_back({"AC6", "H_t cross-check observed order >= 1.9 under step halving", [](std::string& d) {
                        const auto b = run(R"({"module":"classical","scenario":"constant-b"})");
                        const auto x = run(R"({"module":"classical","scenario":"crossed"})");
                        const bool pb = suites_pass(b.report, {"classical.ht-crosscheck"}, d);
                        const bool px = suites_pass(x.report, {"classical.ht-crosscheck"}, d);
                        return pb && px;
                      }});

  criteria.push_back({"AC7", "two-body: frame fix and evolution keep r0, q0 <= 1e-10; frequency to 1e-6",
                      [](std::string& d) {
                        const auto r = run(R"({"module":"classical","scenario":"two-body-harmonic"})");
                        return suites_pass(r.report, {"classical.frame-fix", "classical.two-body"}, d);
                      }});

  criteria.push_back({"AC8", "quantum: classical match 1e-8, Klein-Gordon, [X,PP] 1e-8, offshell variance growth",
                      [](std::string& d) {
                        const auto f = run(R"({"module":"quantum","scenario":"free-packet"})");
                        const auto k = run(R"({"module":"quantum","scenario":"klein-gordon"})");
                        const auto c = run(R"({"module":"quantum","scenario":"commutator","seed":8})");
                        const auto o = run(R"({"module":"quantum","scenario":"offshell"})");
                        bool ok = suites_pass(f.report, {"quantum.classical-match", "quantum.ehrenfest"}, d);
                        ok = suites_pass(k.report, {"quantum.klein-gordon"}, d) && ok;
                        ok = suites_pass(c.report, {"quantum.commutator"}, d) && ok;
                        ok = suites_pass(o.report, {"quantum.offshell"}, d) && ok;
                        return ok;
                      }});

  criteria.push_back({"AC9", "Fock sector at 27 modes, N_max 4, < 60 s", [](std::string& d) {
                        const auto r =
                            run(R"({"module":"field","scenario":"check","seed":2,"params":{"modes":27,"n_max":4}})");
                        d += " time=" + seconds(r.seconds);
                        return suites_pass(r.report,
                                           {"field.ladder", "field.normalization", "field.exchange", "field.hermiticity"},
                                           d) &&
                               r.seconds < 60.0;
                      }});

  criteria.push_back({"AC10", "identical config and seed give byte-identical artifacts", [](std::string& d) {
                        const std::vector<std::string> configs{
                            R"({"module":"algebra","scenario":"jacobi"})",
                            R"({"module":"classical","scenario":"plane-wave","seed":5})",
                            R"({"module":"quantum","scenario":"commutator","seed":5})",
                            R"({"module":"field","scenario":"check","seed":5,"params":{"modes":8,"n_max":3}})",
                            R"({"module":"field","scenario":"correlator"})"};
                        const auto root = std::filesystem::temp_directory_path() / "hr13_acceptance_determinism";
                        bool ok = true;
                        int compared = 0;
                        for (std::size_t i = 0; i < configs.size(); ++i) {
                          const auto cfg = validate(parse_config(configs[i]));
                          const auto a = root / std::to_string(i) / "a", b = root / std::to_string(i) / "b";
                          std::filesystem::remove_all(root / std::to_string(i));
                          run_scenario(cfg, a);
                          run_scenario(cfg, b);
                          for (const auto& entry : std::filesystem::directory_iterator(a)) {
                            ++compared;
                            if (slurp(entry.path()) != slurp(b / entry.path().filename())) {
                              ok = false;
                              d += " differs: " + cfg.module + "/" + cfg.scenario + "/" +
                                   entry.path().filename().string();
                            }
                          }
                        }
                        std::filesystem::remove_all(root);
                        d += " files=" + std::to_string(compared);
                        return ok && compared > 0;
                      }});

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.evaluate(detail);
    } catch (const std::exception& e) {
      detail += std::string(" exception: ") + e.what();
    }
    failures += ok ? 0 : 1;
    std::printf("%-5s %s  %s |%s\n", c.id.c_str(), ok ? "PASS" : "FAIL", c.summary.c_str(), detail.c_str());
  }
  std::printf("acceptance: %d/%zu passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
