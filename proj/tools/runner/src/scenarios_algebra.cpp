#include <cmath>

#include "hr13/algebra.hpp"
#include "hr13/contraction.hpp"
#include "hr13/errors.hpp"
#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

namespace {

using namespace hr13::algebra;

void run_structure(ScenarioContext& ctx) {
  const AlgebraCheck chk = check_algebra();
  ctx.check_true("algebra.antisymmetry", "antisymmetry", chk.antisymmetry);
  ctx.check_true("algebra.central", "m-central", chk.central);
  ctx.check_true("algebra.poincare", "poincare-closure", chk.poincare_closed);
  ctx.check_close("algebra.jacobi", "jacobi-triples", chk.jacobi_triples, 455, 0.0);
  ctx.check_close("algebra.jacobi", "jacobi-failures", static_cast<double>(chk.failures.size()), 0, 0.0);

  Json failures = Json::array();
  for (const auto& f : chk.failures)
    failures.push_back({{"a", f.a.name()}, {"b", f.b.name()}, {"c", f.c.name()}, {"residual", f.residual.str()}});
  Json summary{{"antisymmetry", chk.antisymmetry ? "pass" : "fail"},
               {"jacobi_triples", chk.jacobi_triples},
               {"failures", failures}};
  ctx.artifact("structure.json", dump_deterministic(summary) + "\n");

  CsvTable table("structure-table", 1, {"a", "b", "g", "coefficient"});
  const auto gens = all_generators();
  for (const auto& a : gens)
    for (const auto& b : gens) {
      const Combination ab = bracket(a, b);
      for (const auto& [g, r] : ab.terms())
        table.row({static_cast<double>(a.index()), static_cast<double>(b.index()), static_cast<double>(g.index()),
                   r.to_double()});
    }
  ctx.artifact("structure_table.csv", table.str());
}

/// Maps every contracted bracket back through G = sign·c^p·g and compares with
/// iħc times the original bracket; returns the max relative mismatch.
double inverse_rescaling_defect(double c) {
  double worst = 0.0;
  const auto gens = all_contracted_generators();
  for (const auto& A : gens)
    for (const auto& B : gens) {
      const Rescaling ra = rescaling(A), rb = rescaling(B);
      // Reconstruct coefficients of original generators in units of iħ.
      std::map<int, double> from_contracted;
      for (const auto& [G, coef] : contracted_bracket(ContractedBasis{c}, A, B)) {
        const Rescaling rg = rescaling(G);
        from_contracted[rg.original.index()] += coef * rg.sign * std::pow(c, rg.c_power);
      }
      std::map<int, double> direct;
      const double pref = ra.sign * rb.sign * std::pow(c, ra.c_power + rb.c_power) * c;
      const Combination ab = bracket(ra.original, rb.original);
      for (const auto& [g, r] : ab.terms()) direct[g.index()] += pref * r.to_double();
      for (int k = 0; k < kGeneratorCount; ++k) {
        const double x = from_contracted.count(k) ? from_contracted[k] : 0.0;
        const double y = direct.count(k) ? direct[k] : 0.0;
        worst = std::fmax(worst, std::fabs(x - y) / std::fmax(1.0, std::fabs(y)));
      }
    }
  return worst;
}

void run_contraction(ScenarioContext& ctx) {
  const auto cs = ctx.vec("c_values");
  for (double c : cs)
    if (!(c > 0.0)) throw PreconditionError("contraction requires c > 0");
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (!(cs[i] > cs[i - 1])) throw PreconditionError("c sequence must be increasing");

  const ContractionReport rep = contraction_limit_check(cs);
  ctx.check_ge("algebra.contraction", "min-fitted-power", rep.min_fitted_power, 1.0);
  ctx.check_true("algebra.contraction", "monotone-decay", rep.monotone);

  double uh = 0.0, ky = 0.0, inv = 0.0;
  const auto U = ContractedGenerator::time_translation(), H = ContractedGenerator::hamiltonian();
  const auto M = ContractedGenerator::mass();
  for (double c : cs) {
    const ContractedBasis basis{c};
    auto b = contracted_bracket(basis, U, H);
    for (const auto& [g, v] : b) uh = std::fmax(uh, std::fabs(v - (g == M ? -1.0 : 0.0)));
    if (!b.count(M)) uh = std::fmax(uh, 1.0);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        auto kyb = contracted_bracket(basis, ContractedGenerator::boost(i), ContractedGenerator::translation(j));
        const double want = i == j ? -1.0 : 0.0;
        double got_u = 0.0;
        for (const auto& [g, v] : kyb) {
          if (g == U) got_u = v;
          else ky = std::fmax(ky, std::fabs(v));
        }
        ky = std::fmax(ky, std::fabs(got_u - want));
      }
    inv = std::fmax(inv, inverse_rescaling_defect(c));
  }
  ctx.check_le("algebra.contraction", "UH-equals-minus-M", uh, 0.0);
  ctx.check_le("algebra.contraction", "KY-equals-minus-delta-U", ky, 0.0);
  ctx.check_le("algebra.inverse-rescaling", "inverse-rescaling-defect", inv, 1e-12);

  CsvTable table("contraction-deviation", 1, {"a", "b", "c", "deviation", "fitted_power"});
  for (const auto& br : rep.brackets)
    for (std::size_t k = 0; k < cs.size(); ++k)
      table.row({static_cast<double>(br.a.index()), static_cast<double>(br.b.index()), cs[k], br.deviation[k],
                 br.exact ? 0.0 : br.fitted_power});
  ctx.artifact("contraction.csv", table.str());
}

}  // namespace

std::vector<ScenarioSpec> algebra_scenarios() {
  std::vector<ScenarioSpec> v;
  v.push_back({"algebra",
               "jacobi",
               {"algebra.antisymmetry", "algebra.jacobi", "algebra.central", "algebra.poincare"},
               false,
               Json::object(),
               {},
               run_structure});
  v.push_back({"algebra",
               "contraction",
               {"algebra.contraction", "algebra.inverse-rescaling"},
               false,
               Json{{"c_values", {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}}},
               {"c_values"},
               run_contraction});
  return v;
}

}  // namespace hr13::runner
