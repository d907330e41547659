#pragma once

// Two particles with H = p_a²/2m_a + p_b²/2m_b + V(r·r), reduced to
// center-of-mass and relative variables
//   x = (m_ax_a + m_bx_b)/m,  p = p_a + p_b,  r = x_a − x_b,  q = (m_ap_b − m_bp_a)/m.
// The relative pair is canonical as (r, −q), so dr/ds = −q/μ and
// dq/ds = 2V'(r·r) r.

#include <functional>

#include "hr13/classical.hpp"

namespace hr13::classical {

struct TwoBodyState {
  PhasePoint a, b;
  double m_a = 1.0;
  double m_b = 1.0;
};

struct Reduced {
  Vec4 x{}, p{}, r{}, q{};
  double m = 0.0;   ///< m_a + m_b
  double mu = 0.0;  ///< m_am_b/m
  double m_a = 0.0;
  double m_b = 0.0;
};

/// Rejects non-positive masses.
Reduced two_body_reduce(const TwoBodyState& s);
TwoBodyState two_body_restore(const Reduced& r);

/// V as a function of the invariant r·r.
struct Potential {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  ///< dV/d(r·r)

  static Potential zero();
  /// V = ½k r·r.
  static Potential harmonic(double k);
};

/// H = p_a·p_a/2m_a + p_b·p_b/2m_b + V(r·r).
double two_body_hamiltonian(const TwoBodyState& s, const Potential& V);
/// p·p/2m + q·q/2μ + V(r·r).
double reduced_hamiltonian(const Reduced& r, const Potential& V);

/// j^{μν}j_{μν} = 2[(r·r)(q·q) − (r·q)²] for j^{μν} = r^μq^ν − r^νq^μ.
double j_squared(const Vec4& r, const Vec4& q);

/// Λ with Λ^μ_ν mapping a vector at rest in the frame moving with velocity β⃗
/// (|β⃗| < 1) to rest in the lab.
Mat4 boost_matrix(const std::array<double, 3>& beta);

struct FrameFix {
  TwoBodyState state;
  Mat4 boost = identity_mat4();
  double energy_shift = 0.0;  ///< δ added to both p_a⁰ and p_b⁰
  bool boost_only = true;
};

/// Brings the state to r⁰ = q⁰ = 0. A boost alone suffices when j·j > 0;
/// otherwise a boost zeroes r⁰ and a common shift of p_a⁰, p_b⁰ zeroes q⁰.
/// Throws PreconditionError unless r·r > 0, and FrameFixInfeasible when the
/// shift is needed but m_a = m_b.
FrameFix frame_fix(const TwoBodyState& s);

struct TwoBodyTrajectory {
  std::vector<double> s;
  std::vector<Reduced> reduced;
  Trajectory a, b;
};

/// Implicit-midpoint evolution of the relative pair; the center of mass moves
/// freely, x(s) = x₀ + p·s/m. Requires |r⁰|, |q⁰| <= 1e−10·(1 + scale).
TwoBodyTrajectory two_body_evolve(const TwoBodyState& fixed, const Potential& V, double step, long n_steps);

}  // namespace hr13::classical
