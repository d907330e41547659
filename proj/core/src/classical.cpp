#include "hr13/classical.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hr13/errors.hpp"

namespace hr13::classical {

namespace {

void require_flow_args(const ChargedParticle& q, double step, long n_steps) {
  if (!(q.m > 0.0) || !std::isfinite(q.m)) throw PreconditionError("mass m must be positive");
  if (!(q.c > 0.0)) throw PreconditionError("c must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw PreconditionError("step must be positive");
  if (n_steps < 0) throw PreconditionError("n_steps must be non-negative");
}

double hamiltonian(const PhasePoint& z, const EMField& field, const ChargedParticle& q) {
  const Vec4 pi = kinetic_momentum(z, field, q);
  return dot(pi, pi) / (2.0 * q.m);
}

void update_drift(DriftSummary& d, const PhasePoint& z, const EMField& field, const ChargedParticle& q, double h0) {
  const Vec4 pi = kinetic_momentum(z, field, q);
  const double pi2 = dot(pi, pi);
  const double scale_pi = std::fabs(d.pi2_initial) > 0.0 ? std::fabs(d.pi2_initial) : 1.0;
  const double scale_h = std::fabs(h0) > 0.0 ? std::fabs(h0) : 1.0;
  d.pi2_max_relative_drift = std::fmax(d.pi2_max_relative_drift, std::fabs(pi2 - d.pi2_initial) / scale_pi);
  d.hamiltonian_max_relative_drift =
      std::fmax(d.hamiltonian_max_relative_drift, std::fabs(hamiltonian(z, field, q) - h0) / scale_h);
  d.p2_final = dot(z.p, z.p);
}

DriftSummary start_drift(const PhasePoint& z, const EMField& field, const ChargedParticle& q) {
  DriftSummary d;
  const Vec4 pi = kinetic_momentum(z, field, q);
  d.pi2_initial = dot(pi, pi);
  d.p2_initial = dot(z.p, z.p);
  d.p2_final = d.p2_initial;
  return d;
}

}  // namespace

StateN<8> PhasePoint::to_state() const {
  StateN<8> z;
  for (int mu = 0; mu < 4; ++mu) {
    z[mu] = x[mu];
    z[4 + mu] = p[mu];
  }
  return z;
}

PhasePoint PhasePoint::from_state(const StateN<8>& z) {
  PhasePoint out;
  for (int mu = 0; mu < 4; ++mu) {
    out.x[mu] = z[mu];
    out.p[mu] = z[4 + mu];
  }
  return out;
}

Vec4 kinetic_momentum(const PhasePoint& z, const EMField& field, const ChargedParticle& q) {
  return z.p - (q.e / q.c) * field.A(z.x);
}

StateN<8> lorentz_force_rhs(const StateN<8>& z, const EMField& field, const ChargedParticle& q) {
  const PhasePoint pt = PhasePoint::from_state(z);
  const Vec4 pi = kinetic_momentum(pt, field, q);
  StateN<8> out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = pi[mu] / q.m;
  if (q.e == 0.0) {
    out.tail<4>().setZero();
    return out;
  }
  const Mat4 g = field.gradient(pt.x);
  for (int mu = 0; mu < 4; ++mu) {
    double dp_lower = 0.0;
    for (int nu = 0; nu < 4; ++nu) dp_lower += pi[nu] * g[mu][nu];
    out[4 + mu] = eta(mu) * (q.e / (q.m * q.c)) * dp_lower;
  }
  return out;
}

Trajectory lorentz_force_flow(const PhasePoint& initial, const EMField& field, const ChargedParticle& q, double step,
                              long n_steps) {
  require_flow_args(q, step, n_steps);
  Trajectory traj;
  traj.integrator = "implicit-midpoint";
  traj.step = step;
  traj.drift = start_drift(initial, field, q);
  const double h0 = hamiltonian(initial, field, q);

  const std::function<StateN<8>(const StateN<8>&)> f = [&](const StateN<8>& z) {
    return lorentz_force_rhs(z, field, q);
  };
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.samples.push_back({0.0, initial, std::nullopt});
  StateN<8> z = initial.to_state();
  for (long n = 0; n < n_steps; ++n) {
    z = implicit_midpoint_step<8>(f, z, step, n);
    const PhasePoint pt = PhasePoint::from_state(z);
    traj.samples.push_back({static_cast<double>(n + 1) * step, pt, std::nullopt});
    update_drift(traj.drift, pt, field, q, h0);
  }
  return traj;
}

Trajectory free_flow_with_proper_time(const PhasePoint& initial, double m, double m_E, double step, long n_steps,
                                      double c) {
  require_flow_args({0.0, m, c}, step, n_steps);
  if (!(m_E > 0.0)) throw PreconditionError("rest mass m_E must be positive");
  const double p2 = dot(initial.p, initial.p);
  if (p2 > 0.0) throw PreconditionError("spacelike initial momentum: proper time undefined");
  const double target = -m_E * m_E * c * c;
  if (std::fabs(p2 - target) > 1e-10 * std::fabs(target))
    throw PreconditionError("initial momentum does not satisfy p.p = -m_E^2 c^2");

  const EMField none = EMField::none();
  Trajectory traj;
  traj.integrator = "exact";
  traj.step = step;
  traj.drift = start_drift(initial, none, {0.0, m, c});
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (long n = 0; n <= n_steps; ++n) {
    const double s = static_cast<double>(n) * step;
    PhasePoint z{initial.x + (s / m) * initial.p, initial.p};
    traj.samples.push_back({s, z, (m_E / m) * s});
  }
  return traj;
}

Trajectory constant_field_solution(const PhasePoint& initial, const Mat4& F, const EMField& field,
                                   const ChargedParticle& q, double step, long n_steps) {
  require_flow_args(q, step, n_steps);
  Eigen::Matrix4d omega;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) omega(mu, nu) = eta(mu) * (q.e / (q.m * q.c)) * F[mu][nu];

  Eigen::Vector4d pi0, x0;
  const Vec4 pi_init = kinetic_momentum(initial, field, q);
  for (int mu = 0; mu < 4; ++mu) {
    pi0[mu] = pi_init[mu];
    x0[mu] = initial.x[mu];
  }

  Trajectory traj;
  traj.integrator = "closed-form";
  traj.step = step;
  traj.drift = start_drift(initial, field, q);
  const double h0 = hamiltonian(initial, field, q);
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (long n = 0; n <= n_steps; ++n) {
    const double s = static_cast<double>(n) * step;
    // exp([[sΩ, sI], [0, 0]]) = [[e^{sΩ}, ∫₀^s e^{tΩ}dt], [0, I]].
    Eigen::Matrix<double, 8, 8> aug = Eigen::Matrix<double, 8, 8>::Zero();
    aug.topLeftCorner<4, 4>() = s * omega;
    aug.topRightCorner<4, 4>() = s * Eigen::Matrix4d::Identity();
    const Eigen::Matrix<double, 8, 8> e = aug.exp();
    const Eigen::Vector4d pi = e.topLeftCorner<4, 4>() * pi0;
    const Eigen::Vector4d x = x0 + e.topRightCorner<4, 4>() * pi0 / q.m;
    PhasePoint z;
    for (int mu = 0; mu < 4; ++mu) z.x[mu] = x[mu];
    const Vec4 a = field.A(z.x);
    for (int mu = 0; mu < 4; ++mu) z.p[mu] = pi[mu] + (q.e / q.c) * a[mu];
    traj.samples.push_back({s, z, std::nullopt});
    if (n > 0) update_drift(traj.drift, z, field, q, h0);
  }
  return traj;
}

CrossCheck conventional_Ht_crosscheck(const PhasePoint& initial, const EMField& field, const ChargedParticle& q,
                                      double step, long n_steps) {
  require_flow_args(q, step, n_steps);
  const Vec4 pi_init = kinetic_momentum(initial, field, q);
  if (!(pi_init[0] > 0.0)) throw PreconditionError("conventional Hamiltonian requires pi^0 > 0");
  const double pi2 = dot(pi_init, pi_init);
  if (!(pi2 < 0.0)) throw PreconditionError("conventional Hamiltonian requires timelike pi");

  CrossCheck out;
  out.covariant = lorentz_force_flow(initial, field, q, step, n_steps);
  const double c = q.c;
  const double mE = std::sqrt(-pi2) / c;
  out.rest_mass = mE;

  // y = (t, x¹, x², x³, p¹, p², p³); t advances exactly under the midpoint rule.
  const std::function<StateN<7>(const StateN<7>&)> f = [&](const StateN<7>& y) {
    const Vec4 x{c * y[0], y[1], y[2], y[3]};
    const Vec4 a = field.A(x);
    std::array<double, 3> pi{};
    double pis = 0.0;
    for (int i = 0; i < 3; ++i) {
      pi[i] = y[4 + i] - (q.e / c) * a[i + 1];
      pis += pi[i] * pi[i];
    }
    const double pi0 = std::sqrt(pis + mE * mE * c * c);
    StateN<7> d;
    d[0] = 1.0;
    for (int i = 0; i < 3; ++i) d[1 + i] = c * pi[i] / pi0;
    if (q.e == 0.0) {
      d.tail<3>().setZero();
      return d;
    }
    const Mat4 g = field.gradient(x);
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += pi[j] * g[i + 1][j + 1];
      d[4 + i] = (q.e / pi0) * s + q.e * g[i + 1][0];
    }
    return d;
  };

  const auto to_sample = [&](const StateN<7>& y) {
    PhasePoint z;
    z.x = {c * y[0], y[1], y[2], y[3]};
    const Vec4 a = field.A(z.x);
    double pis = 0.0;
    for (int i = 0; i < 3; ++i) {
      z.p[i + 1] = y[4 + i];
      const double pi = y[4 + i] - (q.e / c) * a[i + 1];
      pis += pi * pi;
    }
    z.p[0] = std::sqrt(pis + mE * mE * c * c) + (q.e / c) * a[0];
    return Sample{y[0], z, std::nullopt};
  };

  StateN<7> y;
  y[0] = initial.x[0] / c;
  for (int i = 0; i < 3; ++i) {
    y[1 + i] = initial.x[i + 1];
    y[4 + i] = initial.p[i + 1];
  }
  out.conventional.integrator = "implicit-midpoint";
  out.conventional.step = step;
  out.conventional.samples.push_back(to_sample(y));
  const auto& cov = out.covariant.samples;
  for (std::size_t n = 0; n + 1 < cov.size(); ++n) {
    const double pi0 = kinetic_momentum(cov[n + 1].z, field, q)[0];
    if (!(pi0 > 0.0)) throw NumericalError("pi^0 reached non-positive value at step " + std::to_string(n + 1));
    const double dt = (cov[n + 1].z.x[0] - cov[n].z.x[0]) / c;
    y = implicit_midpoint_step<7>(f, y, dt, static_cast<long>(n));
    y[0] = cov[n + 1].z.x[0] / c;
    out.conventional.samples.push_back(to_sample(y));
    for (int i = 1; i < 4; ++i)
      out.max_spatial_deviation =
          std::fmax(out.max_spatial_deviation, std::fabs(out.conventional.samples.back().z.x[i] - cov[n + 1].z.x[i]));
  }
  return out;
}

Eigen::Matrix<double, 8, 8> symplectic_form() {
  Eigen::Matrix<double, 8, 8> omega = Eigen::Matrix<double, 8, 8>::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    omega(mu, 4 + mu) = eta(mu);
    omega(4 + mu, mu) = -eta(mu);
  }
  return omega;
}

Eigen::Matrix<double, 8, 8> step_jacobian(const PhasePoint& z, const EMField& field, const ChargedParticle& q,
                                          double step) {
  const std::function<StateN<8>(const StateN<8>&)> f = [&](const StateN<8>& y) {
    return lorentz_force_rhs(y, field, q);
  };
  const std::function<StateN<8>(const StateN<8>&)> map = [&](const StateN<8>& y) {
    return implicit_midpoint_step<8>(f, y, step);
  };
  Eigen::Matrix<double, 8, 8> J;
  const StateN<8> z0 = z.to_state();
  for (int j = 0; j < 8; ++j) {
    const double h = 1e-5 * (1.0 + std::fabs(z0[j]));
    StateN<8> zp = z0, zm = z0;
    zp[j] += h;
    zm[j] -= h;
    J.col(j) = (map(zp) - map(zm)) / (2.0 * h);
  }
  return J;
}

}  // namespace hr13::classical
