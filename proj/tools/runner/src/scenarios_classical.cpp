#include <cmath>
#include <numbers>
#include <random>

#include "hr13/classical.hpp"
#include "hr13/errors.hpp"
#include "hr13/runner/scenarios.hpp"
#include "hr13/two_body.hpp"

namespace hr13::runner {

namespace {

using namespace hr13::classical;

Vec4 vec4(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }
std::array<double, 3> vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

CsvTable trajectory_csv(const Trajectory& t, const EMField& field, const ChargedParticle& q) {
  const bool tau = !t.samples.empty() && t.samples.front().tau.has_value();
  std::vector<std::string> cols{"s", "x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3", "pi2", "p2"};
  if (tau) cols.push_back("tau");
  CsvTable table("trajectory", 1, cols);
  for (const auto& smp : t.samples) {
    const Vec4 pi = kinetic_momentum(smp.z, field, q);
    std::vector<double> row{smp.s};
    for (double v : smp.z.x) row.push_back(v);
    for (double v : smp.z.p) row.push_back(v);
    row.push_back(dot(pi, pi));
    row.push_back(dot(smp.z.p, smp.z.p));
    if (tau) row.push_back(*smp.tau);
    table.row(row);
  }
  return table;
}

double max_deviation(const Trajectory& a, const Trajectory& b, double s_max) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.samples.size() && n < b.samples.size(); ++n) {
    if (a.samples[n].s > s_max * (1 + 1e-12)) break;
    for (int mu = 0; mu < 4; ++mu) {
      worst = std::fmax(worst, std::fabs(a.samples[n].z.x[mu] - b.samples[n].z.x[mu]));
      worst = std::fmax(worst, std::fabs(a.samples[n].z.p[mu] - b.samples[n].z.p[mu]));
    }
  }
  return worst;
}

struct FlowSetup {
  PhasePoint initial;
  ChargedParticle q;
  double step;
  long n_steps;
};

/// Initial data: x^μ from "x", kinetic momentum π^μ from "pi", so that
/// p = π + (e/c)A(x).
FlowSetup flow_setup(const ScenarioContext& ctx, const EMField& field, bool read_steps = true) {
  FlowSetup s;
  s.q = {ctx.num("e"), ctx.num("m"), ctx.num("c")};
  s.step = read_steps ? ctx.num("step") : 0.0;
  s.n_steps = read_steps ? ctx.integer("n_steps") : 0;
  s.initial.x = vec4(ctx.vec("x"));
  s.initial.p = vec4(ctx.vec("pi")) + (s.q.e / s.q.c) * field.A(s.initial.x);
  return s;
}

/// Observed convergence order of the covariant/conventional deviation under step halving.
double ht_order(const FlowSetup& s, const EMField& field, double* coarse, double* fine) {
  const auto a = conventional_Ht_crosscheck(s.initial, field, s.q, s.step, s.n_steps);
  const auto b = conventional_Ht_crosscheck(s.initial, field, s.q, s.step / 2, 2 * s.n_steps);
  *coarse = a.max_spatial_deviation;
  *fine = b.max_spatial_deviation;
  return std::log2(*coarse / *fine);
}

void constant_field_checks(ScenarioContext& ctx, const EMField& field, const Mat4& F, double period) {
  const FlowSetup s = flow_setup(ctx, field);
  const auto traj = lorentz_force_flow(s.initial, field, s.q, s.step, s.n_steps);
  const auto exact = constant_field_solution(s.initial, F, field, s.q, s.step, s.n_steps);

  ctx.check_le("classical.analytic", "max-deviation-one-period", max_deviation(traj, exact, period),
               ctx.num("analytic_tolerance"));
  ctx.check_le("classical.pi2", "pi2-relative-drift", traj.drift.pi2_max_relative_drift, 1e-8);
  ctx.check_le("classical.hamiltonian", "H_s-relative-drift", traj.drift.hamiltonian_max_relative_drift, 1e-9);
  const double p2_exact = exact.drift.p2_final;
  ctx.check_close("classical.p2", "p2-final-vs-analytic", traj.drift.p2_final, p2_exact, 1e-6);

  if (ctx.params().at("ht_crosscheck").get<bool>()) {
    FlowSetup short_run = s;
    short_run.n_steps = std::min<long>(s.n_steps, static_cast<long>(std::ceil(period / s.step)));
    double coarse = 0, fine = 0;
    const double order = ht_order(short_run, field, &coarse, &fine);
    ctx.check_ge("classical.ht-crosscheck", "observed-order", order, 1.9);
    ctx.check_le("classical.ht-crosscheck", "deviation-at-step", coarse, 1e-6);
  }
  ctx.artifact("trajectory.csv", trajectory_csv(traj, field, s.q).str());
}

Json flow_defaults(std::vector<double> pi, long n_steps) {
  return Json{{"e", 1.0},         {"m", 1.0},        {"c", 1.0},
              {"step", 1e-3},     {"n_steps", n_steps}, {"x", {0.0, 0.0, 0.0, 0.0}},
              {"pi", pi},         {"analytic_tolerance", 1e-6}, {"ht_crosscheck", true}};
}

void run_constant_b(ScenarioContext& ctx) {
  const auto B = vec3(ctx.vec("B"));
  const EMField field = EMField::constant({0, 0, 0}, B);
  const double b = std::sqrt(B[0] * B[0] + B[1] * B[1] + B[2] * B[2]);
  const double omega = std::fabs(ctx.num("e")) * b / (ctx.num("m") * ctx.num("c"));
  if (!(omega > 0.0)) throw PreconditionError("constant-b scenario needs e*B != 0");
  constant_field_checks(ctx, field, constant_field_strength({0, 0, 0}, B), 2 * std::numbers::pi / omega);
}

void run_constant_e(ScenarioContext& ctx) {
  const auto E = vec3(ctx.vec("E"));
  const EMField field = EMField::constant(E, {0, 0, 0});
  constant_field_checks(ctx, field, constant_field_strength(E, {0, 0, 0}), ctx.num("period"));
}

void run_crossed(ScenarioContext& ctx) {
  const auto E = vec3(ctx.vec("E"));
  const auto B = vec3(ctx.vec("B"));
  const double e2 = E[0] * E[0] + E[1] * E[1] + E[2] * E[2];
  const double b2 = B[0] * B[0] + B[1] * B[1] + B[2] * B[2];
  if (std::fabs(E[0] * B[0] + E[1] * B[1] + E[2] * B[2]) > 1e-14 * (e2 + b2) || !(e2 < b2))
    throw PreconditionError("crossed scenario needs E perpendicular to B and |E| < |B|");
  const EMField field = EMField::constant(E, B);
  const double e = ctx.num("e"), m = ctx.num("m"), c = ctx.num("c");
  const double omega = std::fabs(e) * std::sqrt(b2 - e2) / (m * c);
  const long per = ctx.integer("steps_per_period");
  const double period = 2 * std::numbers::pi / omega;

  FlowSetup s = flow_setup(ctx, field, false);
  s.step = period / static_cast<double>(per);
  s.n_steps = per;
  const auto cross = conventional_Ht_crosscheck(s.initial, field, s.q, s.step, s.n_steps);
  const auto& cov = cross.covariant.samples;
  const auto& conv = cross.conventional.samples;
  const std::array<double, 3> drift{(E[1] * B[2] - E[2] * B[1]) / b2 * c, (E[2] * B[0] - E[0] * B[2]) / b2 * c,
                                    (E[0] * B[1] - E[1] * B[0]) / b2 * c};
  double dcov = 0.0, dconv = 0.0;
  const double dx0_cov = cov.back().z.x[0] - cov.front().z.x[0];
  const double dx0_conv = conv.back().z.x[0] - conv.front().z.x[0];
  for (int i = 0; i < 3; ++i) {
    dcov = std::fmax(dcov, std::fabs(c * (cov.back().z.x[i + 1] - cov.front().z.x[i + 1]) / dx0_cov - drift[i]));
    dconv = std::fmax(dconv, std::fabs(c * (conv.back().z.x[i + 1] - conv.front().z.x[i + 1]) / dx0_conv - drift[i]));
  }
  ctx.check_le("classical.analytic", "drift-velocity-covariant", dcov, ctx.num("drift_tolerance"));
  ctx.check_le("classical.ht-crosscheck", "drift-velocity-conventional", dconv, ctx.num("drift_tolerance"));
  ctx.check_le("classical.ht-crosscheck", "max-spatial-deviation", cross.max_spatial_deviation, 1e-6);
  ctx.check_le("classical.pi2", "pi2-relative-drift", cross.covariant.drift.pi2_max_relative_drift, 1e-8);
  const auto exact = constant_field_solution(s.initial, constant_field_strength(E, B), field, s.q, s.step, s.n_steps);
  ctx.check_le("classical.analytic", "max-deviation-one-period", max_deviation(cross.covariant, exact, period),
               ctx.num("analytic_tolerance"));
  ctx.artifact("trajectory.csv", trajectory_csv(cross.covariant, field, s.q).str());
  ctx.artifact("trajectory_conventional.csv", trajectory_csv(cross.conventional, field, s.q).str());
}

void run_free(ScenarioContext& ctx) {
  const double m = ctx.num("m"), mE = ctx.num("m_E"), c = ctx.num("c"), step = ctx.num("step");
  const long n = ctx.integer("n_steps");
  const auto p3 = ctx.vec("p_spatial");
  PhasePoint init;
  init.x = vec4(ctx.vec("x"));
  init.p = {std::sqrt(p3[0] * p3[0] + p3[1] * p3[1] + p3[2] * p3[2] + mE * mE * c * c), p3[0], p3[1], p3[2]};
  const auto traj = free_flow_with_proper_time(init, m, mE, step, n, c);

  double tau_dev = 0.0, line_dev = 0.0;
  for (const auto& smp : traj.samples) {
    tau_dev = std::fmax(tau_dev, std::fabs(*smp.tau - (mE / m) * smp.s));
    for (int mu = 0; mu < 4; ++mu)
      line_dev = std::fmax(line_dev, std::fabs(smp.z.x[mu] - (init.x[mu] + init.p[mu] * smp.s / m)));
  }
  ctx.check_le("classical.proper-time", "tau-vs-(m_E/m)s", tau_dev, 1e-12 * (1 + std::fabs(step * n)));
  ctx.check_le("classical.proper-time", "straight-line", line_dev, 1e-12 * (1 + max_abs(init.x)));

  const EMField none = EMField::none();
  const auto integrated = lorentz_force_flow(init, none, {0.0, m, c}, step, n);
  ctx.check_le("classical.analytic", "midpoint-vs-free-line", max_deviation(integrated, traj, step * n),
               1e-10 * (1 + max_abs(init.x) + max_abs(init.p) * step * n / m));
  ctx.check_le("classical.pi2", "pi2-relative-drift", integrated.drift.pi2_max_relative_drift, 1e-12);
  ctx.artifact("trajectory.csv", trajectory_csv(traj, none, {0.0, m, c}).str());
}

void run_plane_wave(ScenarioContext& ctx) {
  const EMField analytic = EMField::plane_wave(ctx.num("amplitude"), vec4(ctx.vec("k")));
  const bool fd = ctx.params().at("finite_difference").get<bool>();
  const EMField field = fd ? EMField("plane-wave-fd", [analytic](const Vec4& x) { return analytic.A(x); }) : analytic;
  const FlowSetup s = flow_setup(ctx, field);
  const auto traj = lorentz_force_flow(s.initial, field, s.q, s.step, s.n_steps);
  ctx.check_le("classical.hamiltonian", "H_s-relative-drift", traj.drift.hamiltonian_max_relative_drift,
               ctx.num("hamiltonian_tolerance"));

  std::mt19937_64 rng(ctx.seed());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto omega = symplectic_form();
  double symp = 0.0, rev = 0.0, antisym = 0.0;
  const long n_states = ctx.integer("random_states");
  for (long k = 0; k < n_states; ++k) {
    PhasePoint z;
    for (int mu = 0; mu < 4; ++mu) {
      z.x[mu] = 2.0 * u(rng);
      z.p[mu] = u(rng);
    }
    z.p[0] = 2.0 + std::fabs(z.p[0]);
    const auto J = step_jacobian(z, field, s.q, s.step);
    symp = std::fmax(symp, (J.transpose() * omega * J - omega).cwiseAbs().maxCoeff());

    const long steps = ctx.integer("reversibility_steps");
    const auto fwd = lorentz_force_flow(z, field, s.q, s.step, steps);
    const std::function<StateN<8>(const StateN<8>&)> f = [&](const StateN<8>& y) {
      return lorentz_force_rhs(y, field, s.q);
    };
    StateN<8> y = fwd.samples.back().z.to_state();
    for (long n = 0; n < steps; ++n) y = implicit_midpoint_step<8>(f, y, -s.step, n);
    rev = std::fmax(rev, (y - z.to_state()).lpNorm<Eigen::Infinity>());

    const Mat4 F = field.F(z.x);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) antisym = std::fmax(antisym, std::fabs(F[a][b] + F[b][a]));
  }
  ctx.check_le("classical.symplectic", "JtOJ-minus-O", symp, 1e-9);
  ctx.check_le("classical.reversibility", "forward-backward", rev, 1e-9);
  ctx.check_le("classical.analytic", "F-antisymmetry", antisym, fd ? 1e-10 : 0.0);
  ctx.artifact("trajectory.csv", trajectory_csv(traj, field, s.q).str());
}

void run_two_body(ScenarioContext& ctx) {
  const double ma = ctx.num("m_a"), mb = ctx.num("m_b"), k = ctx.num("k"), step = ctx.num("step");
  const long n = ctx.integer("n_steps");
  Reduced red;
  red.m_a = ma;
  red.m_b = mb;
  red.m = ma + mb;
  red.mu = ma * mb / red.m;
  red.x = vec4(ctx.vec("x"));
  red.p = vec4(ctx.vec("p"));
  red.r = vec4(ctx.vec("r"));
  red.q = vec4(ctx.vec("q"));
  const TwoBodyState state = two_body_restore(red);
  const Potential V = Potential::harmonic(k);

  const Reduced back = two_body_reduce(state);
  double rt = 0.0;
  for (int m = 0; m < 4; ++m)
    rt = std::fmax(rt, std::fmax(std::fabs(back.r[m] - red.r[m]), std::fabs(back.q[m] - red.q[m])));
  ctx.check_le("classical.two-body", "reduce-restore-roundtrip", rt, 1e-12 * (1 + max_abs(red.r) + max_abs(red.q)));
  const double h1 = two_body_hamiltonian(state, V), h2 = reduced_hamiltonian(back, V);
  ctx.check_le("classical.two-body", "hamiltonian-split", std::fabs(h1 - h2), 1e-12 * (1 + std::fabs(h1)));

  const FrameFix fix = frame_fix(state);
  const Reduced fixed = two_body_reduce(fix.state);
  ctx.check_le("classical.frame-fix", "r0-after-fix", std::fabs(fixed.r[0]), 1e-10);
  ctx.check_le("classical.frame-fix", "q0-after-fix", std::fabs(fixed.q[0]), 1e-10);
  ctx.check_true("classical.frame-fix", "boost-only-when-jj-positive",
                 fix.boost_only == (j_squared(red.r, red.q) > 0.0));

  const auto evo = two_body_evolve(fix.state, V, step, n);
  double r0 = 0.0, q0 = 0.0, energy = 0.0;
  const double p0 = evo.reduced.front().p[0];
  for (const auto& rr : evo.reduced) {
    r0 = std::fmax(r0, std::fabs(rr.r[0]));
    q0 = std::fmax(q0, std::fabs(rr.q[0]));
    energy = std::fmax(energy, std::fabs(rr.p[0] - p0) * ctx.num("c"));
  }
  ctx.check_le("classical.two-body", "r0-along-evolution", r0, 1e-10);
  ctx.check_le("classical.two-body", "q0-along-evolution", q0, 1e-10);
  ctx.check_le("classical.two-body", "p0c-conservation", energy, 1e-10 * (1 + std::fabs(p0)));
  double x0_dev = 0.0;
  for (std::size_t i = 0; i < evo.s.size(); ++i)
    x0_dev = std::fmax(x0_dev, std::fabs(evo.reduced[i].x[0] - (fixed.x[0] + p0 / red.m * evo.s[i])));
  ctx.check_le("classical.two-body", "x0-grows-as-(p0/m)s", x0_dev, 1e-10 * (1 + std::fabs(fixed.x[0])));

  // Frequency from the upward zero crossings of the dominant spatial component.
  int comp = 1;
  for (int i = 2; i <= 3; ++i)
    if (std::fabs(fixed.r[i]) + std::fabs(fixed.q[i]) > std::fabs(fixed.r[comp]) + std::fabs(fixed.q[comp])) comp = i;
  std::vector<double> crossings;
  for (std::size_t i = 1; i < evo.s.size(); ++i) {
    const double a = evo.reduced[i - 1].r[comp], b = evo.reduced[i].r[comp];
    if (a < 0.0 && b >= 0.0) crossings.push_back(evo.s[i - 1] + step * a / (a - b));
  }
  const double omega_expected = std::sqrt(k / red.mu);
  double omega = 0.0;
  if (crossings.size() >= 2)
    omega = 2 * std::numbers::pi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
  ctx.check_close("classical.two-body", "oscillator-frequency", omega, omega_expected, 1e-6 * omega_expected);

  // The branch with an energy translation, and its equal-mass failure.
  TwoBodyState shifted = state;
  {
    Reduced alt = back;
    alt.r = vec4(ctx.vec("r_translation_case"));
    alt.q = vec4(ctx.vec("q_translation_case"));
    shifted = two_body_restore(alt);
    const FrameFix f2 = frame_fix(shifted);
    const Reduced r2 = two_body_reduce(f2.state);
    ctx.check_le("classical.frame-fix", "translation-branch-r0", std::fabs(r2.r[0]), 1e-10);
    ctx.check_le("classical.frame-fix", "translation-branch-q0", std::fabs(r2.q[0]), 1e-10);
    Reduced eq = alt;
    eq.m_a = eq.m_b = 0.5 * (ma + mb);
    eq.mu = eq.m_a * eq.m_b / eq.m;
    bool infeasible = false;
    try {
      frame_fix(two_body_restore(eq));
    } catch (const FrameFixInfeasible&) {
      infeasible = true;
    }
    ctx.check_true("classical.frame-fix", "equal-mass-infeasible-reported", infeasible);
  }

  CsvTable table("two-body", 1, {"s", "x0", "x1", "x2", "x3", "r0", "r1", "r2", "r3", "q0", "q1", "q2", "q3"});
  for (std::size_t i = 0; i < evo.s.size(); ++i) {
    const auto& rr = evo.reduced[i];
    table.row({evo.s[i], rr.x[0], rr.x[1], rr.x[2], rr.x[3], rr.r[0], rr.r[1], rr.r[2], rr.r[3], rr.q[0], rr.q[1],
               rr.q[2], rr.q[3]});
  }
  ctx.artifact("two_body.csv", table.str());
  const EMField none = EMField::none();
  ctx.artifact("trajectory_a.csv", trajectory_csv(evo.a, none, {0.0, ma, 1.0}).str());
  ctx.artifact("trajectory_b.csv", trajectory_csv(evo.b, none, {0.0, mb, 1.0}).str());
}

}  // namespace

std::vector<ScenarioSpec> classical_scenarios() {
  std::vector<ScenarioSpec> v;
  v.push_back({"classical",
               "free",
               {"classical.proper-time", "classical.analytic", "classical.pi2"},
               false,
               Json{{"m", 1.0},
                    {"m_E", 1.0},
                    {"c", 1.0},
                    {"step", 1e-2},
                    {"n_steps", 1000},
                    {"x", {0.0, 0.0, 0.0, 0.0}},
                    {"p_spatial", {0.3, 0.0, 0.0}}},
               {},
               run_free});

  Json b = flow_defaults({std::sqrt(1.01), 0.1, 0.0, 0.0}, 10000);
  b["B"] = {0.0, 0.0, 1.0};
  v.push_back({"classical",
               "constant-b",
               {"classical.analytic", "classical.pi2", "classical.hamiltonian", "classical.p2",
                "classical.ht-crosscheck"},
               false,
               b,
               {},
               run_constant_b});

  Json e = flow_defaults({std::sqrt(1.01), 0.1, 0.0, 0.0}, 10000);
  e["E"] = {0.1, 0.0, 0.0};
  e["period"] = 10.0;
  v.push_back({"classical",
               "constant-e",
               {"classical.analytic", "classical.pi2", "classical.hamiltonian", "classical.p2",
                "classical.ht-crosscheck"},
               false,
               e,
               {},
               run_constant_e});

  Json x = flow_defaults({1.0, 0.0, 0.0, 0.0}, 0);
  x.erase("n_steps");
  x.erase("step");
  x.erase("ht_crosscheck");
  x["E"] = {0.5, 0.0, 0.0};
  x["B"] = {0.0, 0.0, 1.0};
  x["steps_per_period"] = 8000;
  x["drift_tolerance"] = 1e-6;
  v.push_back({"classical",
               "crossed",
               {"classical.analytic", "classical.ht-crosscheck", "classical.pi2"},
               false,
               x,
               {},
               run_crossed});

  Json w = flow_defaults({std::sqrt(1.01), 0.1, 0.0, 0.0}, 4000);
  w["step"] = 5e-4;
  w.erase("ht_crosscheck");
  w.erase("analytic_tolerance");
  w["amplitude"] = 0.1;
  w["k"] = {1.0, 0.0, 0.0, 1.0};
  w["finite_difference"] = false;
  w["hamiltonian_tolerance"] = 1e-9;
  w["random_states"] = 8;
  w["reversibility_steps"] = 200;
  v.push_back({"classical",
               "plane-wave",
               {"classical.hamiltonian", "classical.symplectic", "classical.reversibility", "classical.analytic"},
               true,
               w,
               {},
               run_plane_wave});

  v.push_back({"classical",
               "two-body-harmonic",
               {"classical.two-body", "classical.frame-fix"},
               false,
               Json{{"m_a", 1.0},
                    {"m_b", 2.0},
                    {"k", 1.0},
                    {"c", 1.0},
                    {"step", 1e-3},
                    {"n_steps", 10000},
                    {"x", {0.0, 0.0, 0.0, 0.0}},
                    {"p", {3.0, 0.0, 0.0, 0.0}},
                    {"r", {0.5, 1.0, 0.0, 0.0}},
                    {"q", {0.2, 0.0, 1.0, 0.0}},
                    {"r_translation_case", {0.5, 1.0, 0.0, 0.0}},
                    {"q_translation_case", {1.0, 0.0, 0.1, 0.0}}},
               {},
               run_two_body});
  return v;
}

}  // namespace hr13::runner
