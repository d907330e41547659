#include <cmath>

#include "hr13/composite.hpp"
#include "hr13/errors.hpp"
#include "hr13/minkowski.hpp"
#include "hr13/reps.hpp"
#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

namespace {

using namespace hr13::reps;

std::vector<std::pair<double, double>> spin_table(double max_spin) {
  std::vector<std::pair<double, double>> out;
  const int top = static_cast<int>(std::lround(2.0 * max_spin));
  for (int l = 0; l <= top; ++l)
    for (int r = 0; r <= top; ++r) out.emplace_back(0.5 * l, 0.5 * r);
  return out;
}

std::string spin_label(double sl, double sr) { return format_double(sl) + "," + format_double(sr); }

void casimir_checks(ScenarioContext& ctx, double sl, double sr, double hbar, CsvTable& table) {
  const auto vals = casimir_spin(build_spin_rep(sl, sr, hbar));
  const auto [c1, c2] = expected_casimirs(sl, sr, hbar);
  const double tol = 1e-12 * std::fmax(1.0, hbar * hbar * 2.0 * (sl * (sl + 1) + sr * (sr + 1)));
  const std::string tag = "(" + spin_label(sl, sr) + ")";
  ctx.check_close("reps.casimir", "C1" + tag, vals.c1.real(), c1, tol);
  ctx.check_close("reps.casimir", "C2" + tag, vals.c2.real(), c2, tol);
  ctx.check_le("reps.casimir", "imaginary" + tag, std::fmax(std::fabs(vals.c1.imag()), std::fabs(vals.c2.imag())), tol);
  ctx.check_le("reps.casimir", "scalar" + tag, vals.scalar_defect, tol);
  table.row({sl, sr, vals.c1.real(), vals.c2.real(), c1, c2, vals.scalar_defect});
}

void run_casimir(ScenarioContext& ctx) {
  CsvTable table("casimir", 1, {"s_L", "s_R", "C1", "C2", "C1_expected", "C2_expected", "scalar_defect"});
  casimir_checks(ctx, ctx.num("sl"), ctx.num("sr"), ctx.num("hbar"), table);
  ctx.artifact("casimir.csv", table.str());
}

void run_casimir_table(ScenarioContext& ctx) {
  CsvTable table("casimir", 1, {"s_L", "s_R", "C1", "C2", "C1_expected", "C2_expected", "scalar_defect"});
  for (const auto& [sl, sr] : spin_table(ctx.num("max_spin"))) casimir_checks(ctx, sl, sr, ctx.num("hbar"), table);
  ctx.artifact("casimir.csv", table.str());
}

/// Columns of the full-space defect [X̂_k, P̂_k] − iħη_kkÎ must all sit on
/// states with some occupation >= cutoff − 1.
bool defect_localized(const HeisenbergRep& rep) {
  for (int k = 0; k < 4; ++k) {
    const auto d = commutator(rep.X(k), rep.P(k)) - Complex(0.0, rep.hbar() * eta(k)) * rep.identity();
    const auto& m = d.matrix();
    for (int col = 0; col < m.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
        if (std::abs(it.value()) <= 1e-13) continue;
        bool edge = false;
        for (int n : rep.occupation(col)) edge = edge || n >= rep.cutoff() - 1;
        if (!edge) return false;
      }
  }
  return true;
}

void bracket_rows(const BracketReport& rep, CsvTable& table, double family) {
  for (const auto& b : rep.brackets)
    table.row({family, static_cast<double>(b.a.index()), static_cast<double>(b.b.index()), b.relative_defect});
}

void run_check(ScenarioContext& ctx) {
  const int cutoff = static_cast<int>(ctx.integer("cutoff"));
  const double m = ctx.num("mass"), hbar = ctx.num("hbar"), c = ctx.num("c"), tol = ctx.num("tolerance");
  CsvTable table("bracket-defects", 1, {"family", "a", "b", "relative_defect"});

  const auto heis = build_heisenberg_rep(m, cutoff, hbar);
  const auto hrep = check_brackets(realize(heis, c));
  ctx.check_le("reps.brackets", "heisenberg(cutoff=" + std::to_string(cutoff) + ")", hrep.max_relative_defect, tol);
  bracket_rows(hrep, table, 0);
  ctx.check_true("reps.truncation-localization", "defect-support", defect_localized(heis));

  int family = 1;
  for (const auto& [sl, sr] : spin_table(ctx.num("max_spin"))) {
    const auto srep = check_brackets(realize(build_spin_rep(sl, sr, hbar), c));
    ctx.check_le("reps.brackets", "spin(" + spin_label(sl, sr) + ")", srep.max_relative_defect, tol);
    bracket_rows(srep, table, family++);
  }

  const int full_cutoff = static_cast<int>(ctx.integer("full_cutoff"));
  const FullRep full(build_heisenberg_rep(m, full_cutoff, hbar), build_spin_rep(0.5, 0.0, hbar));
  const auto frep = check_brackets(realize(full, c));
  ctx.check_le("reps.brackets", "full(cutoff=" + std::to_string(full_cutoff) + ",spin=1/2,0)", frep.max_relative_defect,
               tol);
  bracket_rows(frep, table, family++);
  ctx.artifact("brackets.csv", table.str());
}

void run_composite(ScenarioContext& ctx) {
  const int cutoff = static_cast<int>(ctx.integer("cutoff"));
  const double ma = ctx.num("m_a"), mb = ctx.num("m_b"), hbar = ctx.num("hbar"), tol = ctx.num("tolerance");
  const auto spin0 = build_spin_rep(0.0, 0.0, hbar);
  const CompositeRep comp =
      product_rep(FullRep(build_heisenberg_rep(ma, cutoff, hbar), spin0), FullRep(build_heisenberg_rep(mb, cutoff, hbar), spin0));
  ctx.check_close("reps.composite", "total-mass", comp.mass, ma + mb, 1e-15 * (ma + mb));
  ctx.check_close("reps.composite", "reduced-mass", comp.reduced_mass, ma * mb / (ma + mb), 1e-15 * (ma + mb));

  double xp = 0.0, rp = 0.0, rq = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const auto want = Complex(0.0, hbar * eta(mu, nu)) * comp.identity;
      xp = std::fmax(xp, (commutator(comp.X[mu], comp.P[nu]) - want).norm_inf_on(comp.interior));
      rp = std::fmax(rp, commutator(comp.R[mu], comp.P[nu]).norm_inf_on(comp.interior));
      rq = std::fmax(rq, (commutator(comp.R[mu], comp.Q[nu]) + want).norm_inf_on(comp.interior));
    }
  ctx.check_le("reps.composite", "[X_cm,P_tot]-i*hbar*eta", xp, tol);
  ctx.check_le("reps.composite", "[R,P_tot]", rp, tol);
  ctx.check_le("reps.composite", "[R,Q]+i*hbar*eta", rq, tol);

  const auto L = orbital_cm(comp);
  const auto S = composite_spin_tensor(comp);
  double decomposition = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double scale = std::fmax(1.0, comp.J[k].norm_inf_on(comp.interior));
    decomposition = std::fmax(decomposition, (L[k] + S[k] - comp.J[k]).norm_inf_on(comp.interior) / scale);
  }
  ctx.check_le("reps.composite", "J=L_cm+S", decomposition, tol);

  const auto brackets = check_brackets(realize(comp, ctx.num("c")));
  ctx.check_le("reps.brackets", "composite(cutoff=" + std::to_string(cutoff) + ")", brackets.max_relative_defect, tol);

  // Spin-only composite of two (1/2, 0) constituents: s = 0 and s = 1 blocks.
  const auto half = build_spin_rep(0.5, 0.0, hbar);
  const auto c1 = casimir_c1(product_spin(half, half));
  Eigen::MatrixXcd dense = Eigen::MatrixXcd(c1.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  const auto ev = es.eigenvalues();
  const double h2 = hbar * hbar;
  const std::array<double, 4> want{0.0, 4.0 * h2, 4.0 * h2, 4.0 * h2};
  double cg = 0.0;
  for (int i = 0; i < 4; ++i) cg = std::fmax(cg, std::fabs(ev[i] - want[i]));
  ctx.check_le("reps.composite", "clebsch-gordan-C1-spectrum", cg, 1e-12 * std::fmax(1.0, h2));

  CsvTable table("composite-c1-spectrum", 1, {"index", "eigenvalue", "expected"});
  for (int i = 0; i < 4; ++i) table.row({static_cast<double>(i), ev[i], want[i]});
  ctx.artifact("composite_spectrum.csv", table.str());
}

void run_onshell(ScenarioContext& ctx) {
  const int cutoff = static_cast<int>(ctx.integer("cutoff"));
  const double hbar = ctx.num("hbar");
  const auto rep = build_heisenberg_rep(ctx.num("mass"), cutoff, hbar);
  const auto interior = rep.interior(3);
  Vector vac = Vector::Zero(rep.dim());
  vac[0] = 1.0;
  CsvTable table("onshell-commutator", 1, {"mu", "relative_defect", "vacuum_expectation_abs", "operator_norm"});
  for (int mu = 0; mu < 4; ++mu) {
    const auto comm = onshell_violation_commutator(rep, mu);
    const auto rhs = Complex(0.0, 2.0 * hbar) * rep.P(mu);
    const double scale = rhs.norm_inf_on(interior);
    const double defect = (comm - rhs).norm_inf_on(interior) / scale;
    const double vac_exp = std::abs(expectation(comm, vac));
    ctx.check_le("reps.onshell", "[X_" + std::to_string(mu) + ",PP]-2i*hbar*P", defect, ctx.num("tolerance"));
    ctx.check_le("reps.onshell", "vacuum-expectation-" + std::to_string(mu), vac_exp, 1e-12);
    ctx.check_ge("reps.onshell", "operator-nonzero-" + std::to_string(mu), comm.norm_inf(), 1e-6);
    table.row({static_cast<double>(mu), defect, vac_exp, comm.norm_inf()});
  }
  ctx.artifact("onshell.csv", table.str());
}

void run_contracted_boost(ScenarioContext& ctx) {
  const int cutoff = static_cast<int>(ctx.integer("cutoff"));
  const double hbar = ctx.num("hbar");
  const auto cs = ctx.vec("c_values");
  const FullRep full(build_heisenberg_rep(ctx.num("mass"), cutoff, hbar),
                     build_spin_rep(ctx.num("sl"), ctx.num("sr"), hbar));
  const auto interior = full.interior(2);
  CsvTable table("contracted-boost", 1, {"i", "c", "deviation", "c_times_deviation"});
  for (int i = 1; i <= 3; ++i) {
    const double bound =
        (full.X(i) * full.P(0)).norm_inf_on(interior) / cs.front() + full.S(i, 0).norm_inf_on(interior);
    double worst_scaled = 0.0;
    std::vector<double> logs_c, logs_d;
    for (double c : cs) {
      const auto [K, PT] = contracted_boost(full, i, c);
      const double d = (K - PT).norm_inf_on(interior);
      worst_scaled = std::fmax(worst_scaled, c * d);
      table.row({static_cast<double>(i), c, d, c * d});
      if (d > 0.0) {
        logs_c.push_back(std::log(c));
        logs_d.push_back(-std::log(d));
      }
    }
    ctx.check_le("reps.contracted-boost", "c*|K-PT|(i=" + std::to_string(i) + ")", worst_scaled, bound * (1 + 1e-12));
    if (logs_c.size() >= 2) {
      double mc = 0, md = 0;
      for (std::size_t k = 0; k < logs_c.size(); ++k) mc += logs_c[k], md += logs_d[k];
      mc /= logs_c.size();
      md /= logs_c.size();
      double num = 0, den = 0;
      for (std::size_t k = 0; k < logs_c.size(); ++k) {
        num += (logs_c[k] - mc) * (logs_d[k] - md);
        den += (logs_c[k] - mc) * (logs_c[k] - mc);
      }
      ctx.check_ge("reps.contracted-boost", "fitted-power(i=" + std::to_string(i) + ")", num / den, 1.0 - 1e-9);
    }
  }
  ctx.artifact("contracted_boost.csv", table.str());
}

}  // namespace

std::vector<ScenarioSpec> reps_scenarios() {
  std::vector<ScenarioSpec> v;
  v.push_back({"reps", "casimir", {"reps.casimir"}, false, Json{{"sl", 0.5}, {"sr", 0.0}, {"hbar", 1.0}}, {},
               run_casimir});
  v.push_back({"reps", "casimir-table", {"reps.casimir"}, false, Json{{"max_spin", 1.0}, {"hbar", 1.0}}, {},
               run_casimir_table});
  v.push_back({"reps",
               "check",
               {"reps.brackets", "reps.truncation-localization"},
               false,
               Json{{"cutoff", 8},
                    {"full_cutoff", 5},
                    {"mass", 1.0},
                    {"hbar", 1.0},
                    {"c", 1.0},
                    {"max_spin", 1.0},
                    {"tolerance", 1e-12}},
               {},
               run_check});
  v.push_back({"reps",
               "composite",
               {"reps.composite", "reps.brackets"},
               false,
               Json{{"cutoff", 4}, {"m_a", 1.0}, {"m_b", 2.0}, {"hbar", 1.0}, {"c", 1.0}, {"tolerance", 1e-12}},
               {},
               run_composite});
  v.push_back({"reps",
               "onshell",
               {"reps.onshell"},
               false,
               Json{{"cutoff", 8}, {"mass", 1.0}, {"hbar", 1.0}, {"tolerance", 1e-12}},
               {},
               run_onshell});
  v.push_back({"reps",
               "contracted-boost",
               {"reps.contracted-boost"},
               false,
               Json{{"cutoff", 6},
                    {"mass", 1.0},
                    {"hbar", 1.0},
                    {"sl", 0.5},
                    {"sr", 0.0},
                    {"c_values", {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}}},
               {"c_values"},
               run_contracted_boost});
  return v;
}

}  // namespace hr13::runner
