#include <doctest.h>

#include <random>

#include "hr13/classical.hpp"
#include "hr13/errors.hpp"
#include "hr13/two_body.hpp"
#include "oracles.hpp"

using namespace hr13;
using namespace hr13::classical;

namespace {

PhasePoint from_kinetic(const Vec4& x, const Vec4& pi, const EMField& f, const ChargedParticle& q) {
  return {x, pi + (q.e / q.c) * f.A(x)};
}

double max_dev(const Vec4& a, const oracle::V4& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::fmax(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("constant field strength layout and gauge") {
  const auto F = constant_field_strength({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
  CHECK(F[1][0] == 1.0);
  CHECK(F[0][1] == -1.0);
  CHECK(F[1][2] == 6.0);
  CHECK(F[2][3] == 4.0);
  CHECK(F[1][3] == -5.0);
  const auto field = EMField::constant({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
  const auto G = field.F({0.3, -1.0, 2.0, 0.5});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(G[a][b] == doctest::Approx(F[a][b]).epsilon(1e-14));
}

TEST_CASE("finite-difference gradient agrees with the analytic plane-wave gradient") {
  const auto pw = EMField::plane_wave(0.4, {1.0, 0.0, 0.0, 1.0});
  const EMField fd("fd", [pw](const Vec4& x) { return pw.A(x); });
  CHECK_FALSE(fd.analytic());
  const Vec4 x{0.2, 0.7, -0.3, 1.1};
  const auto a = pw.gradient(x), b = fd.gradient(x);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) CHECK(std::fabs(a[m][n] - b[m][n]) <= 1e-9);
}

TEST_CASE("constant B: midpoint orbit against the circular-orbit oracle") {
  const ChargedParticle q{1.0, 1.0, 1.0};
  const auto field = EMField::constant({0, 0, 0}, {0, 0, 1.0});
  const Vec4 x0{0.0, 0.2, -0.1, 0.0}, pi0{std::sqrt(1.0 + 0.09 + 0.01), 0.3, 0.0, 0.1};
  const auto init = from_kinetic(x0, pi0, field, q);
  const long n = 10000;
  const auto traj = lorentz_force_flow(init, field, q, 1e-3, n);
  const double period = 2 * std::numbers::pi;
  double dev = 0.0;
  for (const auto& s : traj.samples) {
    if (s.s > period) break;
    const auto o = oracle::magnetic_orbit(x0, pi0, 1.0, 1.0, 1.0, 1.0, s.s);
    dev = std::fmax(dev, max_dev(s.z.x, o.x));
    dev = std::fmax(dev, max_dev(kinetic_momentum(s.z, field, q), o.pi));
  }
  CHECK(dev <= 1e-6);
  CHECK(traj.drift.pi2_max_relative_drift <= 1e-8);

  // p·p at the end, from the oracle orbit and the symmetric gauge.
  const auto o = oracle::magnetic_orbit(x0, pi0, 1.0, 1.0, 1.0, 1.0, 1e-3 * n);
  const Vec4 p_end = Vec4{o.pi[0], o.pi[1], o.pi[2], o.pi[3]} + field.A({o.x[0], o.x[1], o.x[2], o.x[3]});
  CHECK(std::fabs(traj.drift.p2_final - dot(p_end, p_end)) <= 1e-6);

  const auto exact = constant_field_solution(init, constant_field_strength({0, 0, 0}, {0, 0, 1.0}), field, q, 1e-3, 100);
  for (const auto& s : exact.samples) {
    const auto oo = oracle::magnetic_orbit(x0, pi0, 1.0, 1.0, 1.0, 1.0, s.s);
    CHECK(max_dev(s.z.x, oo.x) <= 1e-12);
  }
}

TEST_CASE("constant E: midpoint orbit against the hyperbolic-motion oracle") {
  const ChargedParticle q{1.0, 2.0, 1.0};
  const double E = 0.3;
  const auto field = EMField::constant({E, 0, 0}, {0, 0, 0});
  const Vec4 x0{0, 0, 0, 0}, pi0{std::sqrt(4.0 + 0.04), 0.2, 0.0, 0.0};
  const auto traj = lorentz_force_flow(from_kinetic(x0, pi0, field, q), field, q, 1e-3, 5000);
  double dev = 0.0;
  for (const auto& s : traj.samples) {
    const auto o = oracle::electric_orbit(x0, pi0, 1.0, E, 2.0, 1.0, s.s);
    dev = std::fmax(dev, max_dev(s.z.x, o.x));
    dev = std::fmax(dev, max_dev(kinetic_momentum(s.z, field, q), o.pi));
  }
  CHECK(dev <= 1e-6);
  CHECK(traj.drift.pi2_max_relative_drift <= 1e-8);
}

TEST_CASE("H_t cross-check converges at second order") {
  const ChargedParticle q{1.0, 1.0, 1.0};
  const auto field = EMField::constant({0.2, 0, 0}, {0, 0, 1.0});
  const auto init = from_kinetic({0, 0, 0, 0}, {std::sqrt(1.04), 0.2, 0.0, 0.0}, field, q);
  const auto a = conventional_Ht_crosscheck(init, field, q, 2e-3, 1000);
  const auto b = conventional_Ht_crosscheck(init, field, q, 1e-3, 2000);
  CHECK(a.rest_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::log2(a.max_spatial_deviation / b.max_spatial_deviation) >= 1.9);
}

TEST_CASE("crossed fields drift with c E x B / B^2 over one s-period") {
  const ChargedParticle q{1.0, 1.0, 1.0};
  const std::array<double, 3> E{0.5, 0, 0}, B{0, 0, 1.0};
  const auto field = EMField::constant(E, B);
  const double w = std::sqrt(1.0 - 0.25);
  const long n = 4000;
  const auto traj = lorentz_force_flow(from_kinetic({0, 0, 0, 0}, {1.0, 0, 0, 0}, field, q), field, q,
                                       2 * std::numbers::pi / w / n, n);
  const auto& a = traj.samples.front().z.x;
  const auto& b = traj.samples.back().z.x;
  const auto v = oracle::drift_velocity(E, B, 1.0);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs((b[i + 1] - a[i + 1]) / (b[0] - a[0]) - v[i]) <= 1e-5);
}

TEST_CASE("free flow: proper time runs at m_E/m and spacelike momenta are rejected") {
  const PhasePoint init{{0, 0, 0, 0}, {std::sqrt(4.0 + 1.0), 1.0, 0, 0}};
  const auto t = free_flow_with_proper_time(init, 3.0, 2.0, 0.1, 50);
  for (const auto& s : t.samples) CHECK(*s.tau == doctest::Approx(2.0 / 3.0 * s.s).epsilon(1e-14));
  CHECK_THROWS_AS(free_flow_with_proper_time({{0, 0, 0, 0}, {0.5, 1.0, 0, 0}}, 1.0, 1.0, 0.1, 5), PreconditionError);
}

TEST_CASE("property: midpoint steps are symplectic and time-reversible") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ChargedParticle q{1.0, 1.0, 1.0};
  const std::array<EMField, 2> fields{EMField::plane_wave(0.3, {1.0, 0.0, 0.0, 1.0}),
                                      EMField::constant({0.2, 0.1, 0.0}, {0.0, 0.3, 1.0})};
  const auto omega = symplectic_form();
  for (const auto& f : fields)
    for (int k = 0; k < 5; ++k) {
      PhasePoint z;
      for (int m = 0; m < 4; ++m) z.x[m] = u(rng), z.p[m] = u(rng);
      z.p[0] = 2.0;
      const auto J = step_jacobian(z, f, q, 1e-2);
      CHECK((J.transpose() * omega * J - omega).cwiseAbs().maxCoeff() <= 1e-9);
      const auto fwd = lorentz_force_flow(z, f, q, 1e-2, 50);
      const std::function<StateN<8>(const StateN<8>&)> rhs = [&](const StateN<8>& y) {
        return lorentz_force_rhs(y, f, q);
      };
      StateN<8> y = fwd.samples.back().z.to_state();
      for (long n = 0; n < 50; ++n) y = implicit_midpoint_step<8>(rhs, y, -1e-2, n);
      CHECK((y - z.to_state()).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
}

TEST_CASE("non-finite fields abort with the failing step") {
  const EMField bad("bad", [](const Vec4& x) {
    return Vec4{0.0, x[0] > 0.05 ? std::nan("") : 0.0, 0.0, 0.0};
  });
  const PhasePoint init{{0, 0, 0, 0}, {1.0, 0.0, 0.0, 0.0}};
  try {
    lorentz_force_flow(init, bad, {1.0, 1.0, 1.0}, 0.01, 20);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("two-body reduction, frame fixing and harmonic frequency") {
  Reduced red;
  red.m_a = 1.0;
  red.m_b = 2.0;
  red.m = 3.0;
  red.mu = 2.0 / 3.0;
  red.x = {0.1, 0.0, 0.2, 0.0};
  red.p = {3.0, 0.1, 0.0, 0.0};
  red.r = {0.5, 1.0, 0.0, 0.0};
  red.q = {0.2, 0.0, 1.0, 0.0};
  const auto state = two_body_restore(red);
  const auto back = two_body_reduce(state);
  CHECK(max_dev(back.r, {0.5, 1.0, 0.0, 0.0}) <= 1e-15);
  CHECK(max_dev(back.q, {0.2, 0.0, 1.0, 0.0}) <= 1e-15);

  const auto fix = frame_fix(state);
  CHECK(fix.boost_only);
  const auto L = fix.boost;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double g = 0.0;
      for (int m = 0; m < 4; ++m) g += L[m][a] * eta(m) * L[m][b];
      CHECK(g == doctest::Approx(eta(a, b)).epsilon(1e-13));
    }
  const auto fixed = two_body_reduce(fix.state);
  CHECK(std::fabs(fixed.r[0]) <= 1e-10);
  CHECK(std::fabs(fixed.q[0]) <= 1e-10);
  CHECK(dot(fixed.r, fixed.r) == doctest::Approx(dot(red.r, red.r)).epsilon(1e-12));

  const double k = 1.5;
  const auto evo = two_body_evolve(fix.state, Potential::harmonic(k), 1e-3, 10000);
  double dev = 0.0;
  for (std::size_t i = 0; i < evo.s.size(); ++i)
    for (int c = 1; c <= 3; ++c) {
      const auto o = oracle::harmonic_relative(fixed.r[c], fixed.q[c], k, fixed.mu, evo.s[i]);
      dev = std::fmax(dev, std::fabs(evo.reduced[i].r[c] - o[0]));
    }
  // Implicit midpoint lags the phase by (ωh)²/12 per unit of ωs.
  CHECK(dev <= 5e-6);

  Reduced tl = red;
  tl.q = {1.0, 0.0, 0.1, 0.0};
  const auto f2 = frame_fix(two_body_restore(tl));
  CHECK_FALSE(f2.boost_only);
  const auto r2 = two_body_reduce(f2.state);
  CHECK(std::fabs(r2.r[0]) <= 1e-10);
  CHECK(std::fabs(r2.q[0]) <= 1e-10);
  tl.m_a = tl.m_b = 1.5;
  tl.mu = 0.75;
  CHECK_THROWS_AS(frame_fix(two_body_restore(tl)), FrameFixInfeasible);
  CHECK_THROWS_AS(two_body_evolve(state, Potential::harmonic(k), 1e-3, 10), PreconditionError);
}
