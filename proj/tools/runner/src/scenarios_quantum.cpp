#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hr13/classical.hpp"
#include "hr13/errors.hpp"
#include "hr13/quantum.hpp"
#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

namespace {

using namespace hr13::quantum;

Vec4 vec4_padded(const std::vector<double>& v) {
  Vec4 out{};
  for (std::size_t i = 0; i < v.size() && i < 4; ++i) out[i] = v[i];
  return out;
}

std::vector<int> int_list(const std::vector<double>& v) {
  std::vector<int> out;
  for (double d : v) out.push_back(static_cast<int>(std::lround(d)));
  return out;
}

Grid grid_from(const ScenarioContext& ctx) {
  const auto points = int_list(ctx.vec("points"));
  const int d = static_cast<int>(points.size()) - 1;
  return Grid::make(d, points, ctx.vec("lengths"));
}

double norm_of(const GridWavefunction& psi) { return psi.norm(); }

/// ‖a − b‖ / ‖b‖.
double relative_distance(const GridWavefunction& a, const GridWavefunction& b) {
  return norm_of(a - b) / norm_of(b);
}

CsvTable moments_csv(const std::vector<EvolutionRecord>& history) {
  CsvTable t("quantum-moments", 1,
             {"s", "X0", "X1", "X2", "X3", "P0", "P1", "P2", "P3", "PP", "VarPP", "norm"});
  for (const auto& r : history) {
    const auto& m = r.moments;
    t.row({r.s, m.x[0], m.x[1], m.x[2], m.x[3], m.p[0], m.p[1], m.p[2], m.p[3], m.pp_mean, m.pp_variance, m.norm});
  }
  return t;
}

Json grid_defaults(Json extra) {
  Json j{{"hbar", 1.0}, {"c", 1.0}, {"points", {128, 128}}, {"lengths", {40.0, 40.0}}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void run_free_packet(ScenarioContext& ctx) {
  const Grid g = grid_from(ctx);
  const double hbar = ctx.num("hbar"), c = ctx.num("c"), m = ctx.num("m");
  const auto psi = gaussian_packet(g, vec4_padded(ctx.vec("center")), vec4_padded(ctx.vec("p_lower")),
                                   vec4_padded(ctx.vec("sigma")), hbar, c);
  EvolutionConfig cfg;
  cfg.m = m;
  cfg.ds = ctx.num("ds");
  cfg.n_steps = ctx.integer("n_steps");
  cfg.record_every = ctx.integer("record_every");
  const Evolution evo = evolve_s(psi, cfg);

  const Moments& m0 = evo.history.front().moments;
  double norm_drift = 0.0, x_dev = 0.0, p_dev = 0.0;
  for (const auto& r : evo.history) {
    norm_drift = std::fmax(norm_drift, std::fabs(r.moments.norm - m0.norm));
    for (int mu = 0; mu < g.axes(); ++mu) {
      x_dev = std::fmax(x_dev, std::fabs(r.moments.x[mu] - (m0.x[mu] + m0.p[mu] * r.s / m)));
      p_dev = std::fmax(p_dev, std::fabs(r.moments.p[mu] - m0.p[mu]));
    }
  }
  const double per_kilo = std::fmax(1.0, static_cast<double>(cfg.n_steps) / 1000.0);
  ctx.check_le("quantum.unitarity", "norm-drift", norm_drift, 1e-10 * per_kilo);
  ctx.check_le("quantum.ehrenfest", "X-moves-as-Ps/m", x_dev, 1e-8);
  ctx.check_le("quantum.ehrenfest", "P-constant", p_dev, 1e-8);

  classical::PhasePoint init{m0.x, m0.p};
  const auto cl = classical::lorentz_force_flow(init, classical::EMField::none(), {0.0, m, c}, cfg.ds,
                                                cfg.n_steps);
  double match = 0.0;
  for (const auto& r : evo.history) {
    const auto idx = static_cast<std::size_t>(std::lround(r.s / cfg.ds));
    const auto& z = cl.samples.at(idx).z;
    for (int mu = 0; mu < g.axes(); ++mu)
      match = std::fmax(match, std::fmax(std::fabs(z.x[mu] - r.moments.x[mu]), std::fabs(z.p[mu] - r.moments.p[mu])));
  }
  ctx.check_le("quantum.classical-match", "moments-vs-classical-free-flow", match, 1e-8);

  EvolutionConfig zero = cfg;
  zero.n_steps = 0;
  ctx.check_le("quantum.unitarity", "zero-step-identity", norm_of(evolve_s(psi, zero).final_state - psi), 0.0);
  ctx.artifact("moments.csv", moments_csv(evo.history).str());
}

void run_klein_gordon(ScenarioContext& ctx) {
  const Grid g = grid_from(ctx);
  const double hbar = ctx.num("hbar"), c = ctx.num("c"), m = ctx.num("m");
  const auto n_on = int_list(ctx.vec("modes_onshell"));
  const auto n_null = int_list(ctx.vec("modes_lightlike"));
  auto wave = [&](const std::vector<int>& n, double* mass) {
    Vec4 p{};
    double pp = 0.0;
    for (int a = 0; a < g.axes(); ++a) {
      p[a] = hbar * 2.0 * std::numbers::pi * n[a] / g.lengths[a];
      pp += eta(a, a) * p[a] * p[a];
    }
    if (pp > 0.0) throw PreconditionError("mode list must give a timelike or lightlike momentum");
    *mass = std::sqrt(-pp) / c;
    return plane_wave(g, p, hbar, c);
  };
  double mE = 0.0, m_null = 0.0;
  const auto on = wave(n_on, &mE);
  const auto null = wave(n_null, &m_null);

  ctx.check_le("quantum.klein-gordon", "onshell-residual", klein_gordon_residual(on, mE), 1e-8);
  const double m_off = mE / 1.1;
  const double r_off = klein_gordon_residual(on, m_off);
  ctx.check_close("quantum.klein-gordon", "offshell-residual", r_off, 0.21 * m_off * m_off * c * c,
                  1e-8 * m_off * m_off * c * c);
  ctx.check_ge("quantum.klein-gordon", "offshell-residual-positive", r_off, 1e-3 * m_off * m_off * c * c);
  ctx.check_le("quantum.klein-gordon", "massless-residual", klein_gordon_residual(null, 0.0), 1e-8);

  EvolutionConfig cfg;
  cfg.m = m;
  cfg.ds = ctx.num("ds");
  cfg.n_steps = ctx.integer("n_steps");
  cfg.record_every = cfg.n_steps > 0 ? cfg.n_steps : 1;
  const auto evo = evolve_s(on, cfg);
  const double s = cfg.ds * static_cast<double>(cfg.n_steps);
  const auto expected = scaled(on, std::polar(1.0, mE * mE * c * c * s / (2.0 * m * hbar)));
  ctx.check_le("quantum.klein-gordon", "stationary-phase-oracle", relative_distance(evo.final_state, expected),
               1e-10);
  ctx.check_le("quantum.unitarity", "plane-wave-norm-drift",
               std::fabs(evo.final_state.norm() - on.norm()) / on.norm(), 1e-10);
  ctx.artifact("moments.csv", moments_csv(evo.history).str());
}

void run_spectral_derivative(ScenarioContext& ctx) {
  const Grid g = grid_from(ctx);
  const double hbar = ctx.num("hbar"), c = ctx.num("c");
  const long max_mode = ctx.integer("max_mode");
  double worst_plane = 0.0;
  for (int a = 0; a < g.axes(); ++a)
    for (long n = -max_mode; n <= max_mode; ++n) {
      if (n == 0) continue;
      Vec4 p{};
      p[a] = hbar * 2.0 * std::numbers::pi * static_cast<double>(n) / g.lengths[a];
      const auto psi = plane_wave(g, p, hbar, c);
      worst_plane = std::fmax(worst_plane, relative_distance(apply_P(psi, a), scaled(psi, p[a])));
    }
  ctx.check_le("quantum.spectral-derivative", "plane-wave-residual", worst_plane, 1e-10);

  const Vec4 center = vec4_padded(ctx.vec("center")), p = vec4_padded(ctx.vec("p_lower")),
             sigma = vec4_padded(ctx.vec("sigma"));
  const auto psi = gaussian_packet(g, center, p, sigma, hbar, c);
  double worst_packet = 0.0;
  for (int a = 0; a < g.axes(); ++a) {
    GridWavefunction exact = psi;
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
      const double x = g.point(i)[a];
      const Complex d = Complex(-(x - center[a]) / (2.0 * sigma[a] * sigma[a]), p[a] / hbar);
      exact.values[i] = Complex(0.0, -hbar) * d * psi.values[i];
    }
    worst_packet = std::fmax(worst_packet, relative_distance(apply_P(psi, a), exact));
  }
  ctx.check_le("quantum.spectral-derivative", "gaussian-residual", worst_packet, 1e-10);
}

void run_commutator(ScenarioContext& ctx) {
  const Grid g = grid_from(ctx);
  const double hbar = ctx.num("hbar"), c = ctx.num("c"), sigma = ctx.num("sigma");
  const long n_states = ctx.integer("states"), n_packets = ctx.integer("packets_per_state");
  std::mt19937_64 rng(ctx.seed());
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  double worst = 0.0;
  for (long s = 0; s < n_states; ++s) {
    GridWavefunction psi{g, std::vector<Complex>(g.size()), hbar, c};
    for (long k = 0; k < n_packets; ++k) {
      Vec4 center{}, p{}, width{};
      for (int a = 0; a < g.axes(); ++a) {
        center[a] = u(rng) * g.lengths[a] / 8.0;
        p[a] = hbar * u(rng) * g.nyquist(a) / 8.0;
        width[a] = sigma;
      }
      const Complex amp(u(rng), u(rng));
      psi = psi + scaled(gaussian_packet(g, center, p, width, hbar, c), amp);
    }
    for (int mu = 0; mu < g.axes(); ++mu) {
      const auto lhs = apply_X(apply_PP(psi), mu) - apply_PP(apply_X(psi, mu));
      const auto rhs = scaled(apply_P(psi, mu), Complex(0.0, 2.0 * hbar));
      worst = std::fmax(worst, relative_distance(lhs, rhs));
    }
  }
  ctx.check_le("quantum.commutator", "[X,PP]-minus-2ihP", worst, 1e-8);
}

/// Multiplies by exp(iΣ_a β_a(x^a − x̄^a)²), a position-momentum correlation.
GridWavefunction chirped(GridWavefunction psi, const Vec4& center, const Vec4& beta) {
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const Vec4 x = psi.grid.point(i);
    double phase = 0.0;
    for (int a = 0; a < psi.grid.axes(); ++a) phase += beta[a] * (x[a] - center[a]) * (x[a] - center[a]);
    psi.values[i] *= std::polar(1.0, phase);
  }
  return psi;
}

void run_offshell(ScenarioContext& ctx) {
  const Grid g = grid_from(ctx);
  const double hbar = ctx.num("hbar"), c = ctx.num("c");
  const Vec4 p = vec4_padded(ctx.vec("p_lower")), sigma = vec4_padded(ctx.vec("sigma"));
  const Vec4 center = vec4_padded(ctx.vec("center")), chirp = vec4_padded(ctx.vec("chirp"));

  CsvTable table("offshell", 1,
                 {"case", "mu", "before_mean", "before_variance", "after_mean", "after_variance",
                  "predicted_after_mean", "first_order_shift"});
  auto record = [&](int case_id, int mu, const OffshellSpread& r) {
    table.row({static_cast<double>(case_id), static_cast<double>(mu), r.before_mean, r.before_variance, r.after_mean,
               r.after_variance, r.predicted_after_mean, r.first_order_shift});
  };
  auto consistent = [&](const std::string& label, const OffshellSpread& r) {
    ctx.check_ge("quantum.offshell", label + "-variance-increase", r.after_variance - r.before_variance,
                 std::numeric_limits<double>::min());
    ctx.check_le("quantum.offshell", label + "-commutator-consistency",
                 std::fabs(r.after_mean - r.predicted_after_mean), 1e-8 * std::fabs(r.after_mean));
  };

  // Symmetric packet at the origin: the first-order shift vanishes.
  const auto sym = gaussian_packet(g, Vec4{}, p, sigma, hbar, c);
  for (int mu = 0; mu < g.axes(); ++mu) {
    const auto r = offshell_spread(sym, mu);
    consistent("symmetric-mu" + std::to_string(mu), r);
    ctx.check_le("quantum.offshell", "symmetric-mu" + std::to_string(mu) + "-first-order-shift",
                 std::fabs(r.first_order_shift), 1e-8 * std::fabs(r.before_mean));
    record(0, mu, r);
  }

  // Displaced, correlated packet: the mean moves at first order.
  const auto shifted = chirped(gaussian_packet(g, center, p, sigma, hbar, c), center, chirp);
  const int mu_shift = static_cast<int>(ctx.integer("shift_axis"));
  for (int mu = 0; mu < g.axes(); ++mu) {
    const auto r = offshell_spread(shifted, mu);
    consistent("displaced-mu" + std::to_string(mu), r);
    if (mu == mu_shift) {
      ctx.check_close("quantum.offshell", "displaced-first-order-mean-shift", r.after_mean - r.before_mean,
                      r.first_order_shift, 0.05 * std::fabs(r.first_order_shift));
      ctx.check_ge("quantum.offshell", "displaced-first-order-shift-nonzero", std::fabs(r.first_order_shift),
                   1e-6 * std::fabs(r.before_mean));
    }
    record(1, mu, r);
  }

  // A momentum eigenstate leaves the mass shell under X.
  const auto plane = plane_wave(g, Vec4{-hbar * 2.0 * std::numbers::pi * 8 / g.lengths[0]}, hbar, c);
  for (int mu = 0; mu < g.axes(); ++mu) {
    const auto r = offshell_spread(plane, mu);
    ctx.check_le("quantum.offshell", "eigenstate-mu" + std::to_string(mu) + "-sharp-before",
                 r.relative_spread_before, 1e-12);
    ctx.check_ge("quantum.offshell", "eigenstate-mu" + std::to_string(mu) + "-spread-after",
                 std::sqrt(r.after_variance) / std::fabs(r.after_mean), 1e-3);
    record(2, mu, r);
  }
  ctx.artifact("offshell.csv", table.str());
}

}  // namespace

std::vector<ScenarioSpec> quantum_scenarios() {
  std::vector<ScenarioSpec> v;
  const std::vector<std::string> grid_arrays{"points", "lengths", "center", "p_lower", "sigma"};
  v.push_back({"quantum",
               "free-packet",
               {"quantum.unitarity", "quantum.ehrenfest", "quantum.classical-match"},
               false,
               grid_defaults({{"m", 1.0},
                              {"ds", 1e-3},
                              {"n_steps", 1000},
                              {"record_every", 50},
                              {"center", {0.0, 0.0}},
                              {"p_lower", {-std::sqrt(1.09), 0.3}},
                              {"sigma", {1.5, 1.5}}}),
               grid_arrays,
               run_free_packet});
  v.push_back({"quantum",
               "klein-gordon",
               {"quantum.klein-gordon", "quantum.unitarity"},
               false,
               grid_defaults({{"points", {64, 64}},
                              {"m", 1.0},
                              {"ds", 1e-2},
                              {"n_steps", 1000},
                              {"modes_onshell", {5, 3}},
                              {"modes_lightlike", {3, 3}}}),
               {"points", "lengths", "modes_onshell", "modes_lightlike"},
               run_klein_gordon});
  v.push_back({"quantum",
               "spectral-derivative",
               {"quantum.spectral-derivative"},
               false,
               grid_defaults({{"max_mode", 16},
                              {"center", {0.0, 0.0}},
                              {"p_lower", {-1.0, 0.5}},
                              {"sigma", {1.5, 1.5}}}),
               grid_arrays,
               run_spectral_derivative});
  v.push_back({"quantum",
               "commutator",
               {"quantum.commutator"},
               true,
               grid_defaults({{"states", 20}, {"packets_per_state", 3}, {"sigma", 1.5}}),
               {"points", "lengths"},
               run_commutator});
  v.push_back({"quantum",
               "offshell",
               {"quantum.offshell"},
               false,
               grid_defaults({{"points", {4096, 32}},
                              {"lengths", {512.0, 48.0}},
                              {"p_lower", {-5.0, 0.0}},
                              {"sigma", {25.0, 3.0}},
                              {"center", {50.0, 0.0}},
                              {"chirp", {1e-4, 0.0}},
                              {"shift_axis", 0}}),
               {"points", "lengths", "center", "p_lower", "sigma", "chirp"},
               run_offshell});
  return v;
}

}  // namespace hr13::runner
