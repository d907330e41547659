#include "hr13/two_body.hpp"

#include <cmath>

#include "hr13/errors.hpp"

namespace hr13::classical {

namespace {

Reduced reduced_from(const Vec4& x, const Vec4& p, const Vec4& r, const Vec4& q, double m_a, double m_b) {
  Reduced out{x, p, r, q, m_a + m_b, m_a * m_b / (m_a + m_b), m_a, m_b};
  return out;
}

TwoBodyState transform(const TwoBodyState& s, const Mat4& L) {
  TwoBodyState out = s;
  out.a = {apply(L, s.a.x), apply(L, s.a.p)};
  out.b = {apply(L, s.b.x), apply(L, s.b.p)};
  return out;
}

}  // namespace

Reduced two_body_reduce(const TwoBodyState& s) {
  if (!(s.m_a > 0.0) || !(s.m_b > 0.0)) throw PreconditionError("two-body masses must be positive");
  const double m = s.m_a + s.m_b;
  const double wa = s.m_a / m, wb = s.m_b / m;
  return reduced_from(wa * s.a.x + wb * s.b.x, s.a.p + s.b.p, s.a.x - s.b.x, wa * s.b.p - wb * s.a.p, s.m_a, s.m_b);
}

TwoBodyState two_body_restore(const Reduced& r) {
  const double wa = r.m_a / r.m, wb = r.m_b / r.m;
  TwoBodyState s;
  s.m_a = r.m_a;
  s.m_b = r.m_b;
  s.a = {r.x + wb * r.r, wa * r.p - r.q};
  s.b = {r.x - wa * r.r, wb * r.p + r.q};
  return s;
}

Potential Potential::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

Potential Potential::harmonic(double k) {
  return {[k](double rr) { return 0.5 * k * rr; }, [k](double) { return 0.5 * k; }};
}

double two_body_hamiltonian(const TwoBodyState& s, const Potential& V) {
  const Vec4 r = s.a.x - s.b.x;
  return dot(s.a.p, s.a.p) / (2.0 * s.m_a) + dot(s.b.p, s.b.p) / (2.0 * s.m_b) + V.value(dot(r, r));
}

double reduced_hamiltonian(const Reduced& r, const Potential& V) {
  return dot(r.p, r.p) / (2.0 * r.m) + dot(r.q, r.q) / (2.0 * r.mu) + V.value(dot(r.r, r.r));
}

double j_squared(const Vec4& r, const Vec4& q) {
  const double rq = dot(r, q);
  return 2.0 * (dot(r, r) * dot(q, q) - rq * rq);
}

Mat4 boost_matrix(const std::array<double, 3>& beta) {
  const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
  if (!(b2 < 1.0)) throw PreconditionError("boost velocity must satisfy |beta| < 1");
  Mat4 L = identity_mat4();
  if (b2 == 0.0) return L;
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  L[0][0] = gamma;
  for (int i = 0; i < 3; ++i) {
    L[0][i + 1] = -gamma * beta[i];
    L[i + 1][0] = -gamma * beta[i];
    for (int j = 0; j < 3; ++j) L[i + 1][j + 1] += (gamma - 1.0) * beta[i] * beta[j] / b2;
  }
  return L;
}

FrameFix frame_fix(const TwoBodyState& s) {
  const Reduced red = two_body_reduce(s);
  const Vec4& r = red.r;
  const Vec4& q = red.q;
  if (!(dot(r, r) > 0.0)) throw PreconditionError("frame fixing requires spacelike separation r.r > 0");

  FrameFix out;
  if (j_squared(r, q) > 0.0) {
    // n = e_0 minus its projection onto span(r, q); timelike because the plane is spacelike.
    const Vec4 e0{1.0, 0.0, 0.0, 0.0};
    const double grr = dot(r, r), gqq = dot(q, q), grq = dot(r, q);
    const double det = grr * gqq - grq * grq;
    const double br = dot(e0, r), bq = dot(e0, q);
    const double cr = (gqq * br - grq * bq) / det;
    const double cq = (grr * bq - grq * br) / det;
    const Vec4 n = e0 - (cr * r + cq * q);
    out.boost = boost_matrix({n[1] / n[0], n[2] / n[0], n[3] / n[0]});
    out.state = transform(s, out.boost);
    out.boost_only = true;
    return out;
  }

  const double r3 = r[1] * r[1] + r[2] * r[2] + r[3] * r[3];
  const double k = r[0] / r3;
  out.boost = boost_matrix({k * r[1], k * r[2], k * r[3]});
  out.state = transform(s, out.boost);
  out.boost_only = false;

  const Reduced boosted = two_body_reduce(out.state);
  const double scale = 1.0 + max_abs(boosted.q) + max_abs(boosted.p);
  if (std::fabs(boosted.q[0]) <= 1e-15 * scale) return out;
  if (s.m_a == s.m_b)
    throw FrameFixInfeasible("equal masses: an energy translation cannot remove q^0 when j.j <= 0");
  out.energy_shift = -boosted.q[0] * red.m / (s.m_a - s.m_b);
  out.state.a.p[0] += out.energy_shift;
  out.state.b.p[0] += out.energy_shift;
  return out;
}

TwoBodyTrajectory two_body_evolve(const TwoBodyState& fixed, const Potential& V, double step, long n_steps) {
  if (!(step > 0.0)) throw PreconditionError("step must be positive");
  if (n_steps < 0) throw PreconditionError("n_steps must be non-negative");
  const Reduced red0 = two_body_reduce(fixed);
  const double scale = 1.0 + max_abs(red0.r) + max_abs(red0.q);
  if (std::fabs(red0.r[0]) > 1e-10 * scale || std::fabs(red0.q[0]) > 1e-10 * scale)
    throw PreconditionError("two-body evolution requires a frame-fixed state (r^0 = q^0 = 0)");

  const double mu = red0.mu;
  double current_s = 0.0;
  // z = (r^μ, q^μ).
  const std::function<StateN<8>(const StateN<8>&)> f = [&](const StateN<8>& z) {
    Vec4 r{z[0], z[1], z[2], z[3]};
    const double dv = V.derivative(dot(r, r));
    if (!std::isfinite(dv))
      throw NumericalError("potential derivative not finite at s = " + std::to_string(current_s));
    StateN<8> d;
    for (int m = 0; m < 4; ++m) {
      d[m] = -z[4 + m] / mu;
      d[4 + m] = 2.0 * dv * z[m];
    }
    return d;
  };

  TwoBodyTrajectory out;
  out.a.integrator = out.b.integrator = "implicit-midpoint";
  out.a.step = out.b.step = step;
  const auto record = [&](double s, const Reduced& red) {
    out.s.push_back(s);
    out.reduced.push_back(red);
    const TwoBodyState st = two_body_restore(red);
    out.a.samples.push_back({s, st.a, std::nullopt});
    out.b.samples.push_back({s, st.b, std::nullopt});
  };
  record(0.0, red0);

  StateN<8> z;
  for (int m = 0; m < 4; ++m) {
    z[m] = red0.r[m];
    z[4 + m] = red0.q[m];
  }
  for (long n = 0; n < n_steps; ++n) {
    current_s = static_cast<double>(n) * step;
    z = implicit_midpoint_step<8>(f, z, step, n);
    const double s = static_cast<double>(n + 1) * step;
    Reduced red = red0;
    red.x = red0.x + (s / red0.m) * red0.p;
    for (int m = 0; m < 4; ++m) {
      red.r[m] = z[m];
      red.q[m] = z[4 + m];
    }
    record(s, red);
  }
  return out;
}

}  // namespace hr13::classical
