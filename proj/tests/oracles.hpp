#pragma once

// Closed-form reference values written out independently of the library.
// Nothing here calls into hr13 beyond plain data types.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using V4 = std::array<double, 4>;

/// 2ħ²[l(l+1) + r(r+1)] and 2ħ²[l(l+1) − r(r+1)].
inline std::array<double, 2> lorentz_casimirs(double l, double r, double hbar) {
  const double a = l * (l + 1), b = r * (r + 1);
  return {2 * hbar * hbar * (a + b), 2 * hbar * hbar * (a - b)};
}

/// Charge in B = B ẑ with ω = eB/mc: x(s), π(s) from x₀, π₀ (upper indices).
struct Orbit {
  V4 x, pi;
};
inline Orbit magnetic_orbit(const V4& x0, const V4& pi0, double e, double B, double m, double c, double s) {
  const double w = e * B / (m * c);
  const double cw = std::cos(w * s), sw = std::sin(w * s);
  Orbit o;
  o.pi = {pi0[0], pi0[1] * cw + pi0[2] * sw, pi0[2] * cw - pi0[1] * sw, pi0[3]};
  o.x = {x0[0] + pi0[0] * s / m, x0[1] + (pi0[1] * sw + pi0[2] * (1 - cw)) / (m * w),
         x0[2] + (pi0[2] * sw - pi0[1] * (1 - cw)) / (m * w), x0[3] + pi0[3] * s / m};
  return o;
}

/// Charge in E = E x̂ with κ = eE/mc: a boost of π in the (0,1) plane by κs.
inline Orbit electric_orbit(const V4& x0, const V4& pi0, double e, double E, double m, double c, double s) {
  const double k = e * E / (m * c);
  const double ch = std::cosh(k * s), sh = std::sinh(k * s);
  Orbit o;
  o.pi = {pi0[0] * ch + pi0[1] * sh, pi0[1] * ch + pi0[0] * sh, pi0[2], pi0[3]};
  o.x = {x0[0] + (pi0[0] * sh + pi0[1] * (ch - 1)) / (m * k), x0[1] + (pi0[1] * sh + pi0[0] * (ch - 1)) / (m * k),
         x0[2] + pi0[2] * s / m, x0[3] + pi0[3] * s / m};
  return o;
}

/// E×B drift velocity c E×B/B².
inline std::array<double, 3> drift_velocity(const std::array<double, 3>& E, const std::array<double, 3>& B, double c) {
  const double b2 = B[0] * B[0] + B[1] * B[1] + B[2] * B[2];
  return {c * (E[1] * B[2] - E[2] * B[1]) / b2, c * (E[2] * B[0] - E[0] * B[2]) / b2,
          c * (E[0] * B[1] - E[1] * B[0]) / b2};
}

inline double minkowski_dot(const V4& a, const V4& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

/// Relative coordinate of a harmonic pair with dr/ds = −q/μ, dq/ds = k r.
inline std::array<double, 2> harmonic_relative(double r0, double q0, double k, double mu, double s) {
  const double w = std::sqrt(k / mu);
  return {r0 * std::cos(w * s) - q0 / (mu * w) * std::sin(w * s), q0 * std::cos(w * s) + mu * w * r0 * std::sin(w * s)};
}

/// Global phase picked up by an on-shell plane wave after s.
inline C onshell_phase(double mE, double c, double m, double hbar, double s) {
  return std::polar(1.0, mE * mE * c * c * s / (2 * m * hbar));
}

/// ⟨0|φ(x)φ(y)|0⟩ as the mode sum Σ_p e^{−ip·(x−y)/ħ}/(2E_pV), p⁰ = E_p/c.
inline C two_point_sum(const std::vector<std::array<double, 3>>& modes, double mE, double c, double hbar, double dp,
                       const V4& x, const V4& y) {
  const double V = std::pow(2 * std::numbers::pi * hbar / dp, 3);
  C sum = 0.0;
  for (const auto& p : modes) {
    const double E = c * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mE * mE * c * c);
    const V4 P{E / c, p[0], p[1], p[2]};
    V4 d{};
    for (int i = 0; i < 4; ++i) d[i] = x[i] - y[i];
    sum += std::polar(1.0, -minkowski_dot(P, d) / hbar) / (2 * E * V);
  }
  return sum;
}

}  // namespace oracle
