#pragma once

// Covariant Hamiltonian flows in the evolution parameter s on the phase space
// (x^μ, p^μ), both stored with upper indices. For a charge e in a potential
// A^μ the Hamiltonian is H_s = π_μπ^μ/2m with π^μ = p^μ − (e/c)A^μ.

#include <optional>
#include <string>
#include <vector>

#include "hr13/em_field.hpp"
#include "hr13/integrator.hpp"
#include "hr13/minkowski.hpp"

namespace hr13::classical {

struct PhasePoint {
  Vec4 x{};
  Vec4 p{};

  StateN<8> to_state() const;
  static PhasePoint from_state(const StateN<8>& z);
};

struct Sample {
  double s = 0.0;
  PhasePoint z;
  std::optional<double> tau;
};

struct DriftSummary {
  double pi2_initial = 0.0;
  double pi2_max_relative_drift = 0.0;
  double hamiltonian_max_relative_drift = 0.0;
  double p2_initial = 0.0;
  double p2_final = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;  ///< s strictly increasing
  std::string integrator;
  double step = 0.0;
  DriftSummary drift;
};

struct ChargedParticle {
  double e = 0.0;
  double m = 1.0;
  double c = 1.0;
};

/// π^μ = p^μ − (e/c)A^μ(x).
Vec4 kinetic_momentum(const PhasePoint& z, const EMField& field, const ChargedParticle& q);

/// Hamilton's equations of H_s: dx^μ/ds = π^μ/m, dp_μ/ds = (e/mc)π^ν∂_μA_ν.
StateN<8> lorentz_force_rhs(const StateN<8>& z, const EMField& field, const ChargedParticle& q);

/// Implicit-midpoint integration of H_s. Rejects m <= 0, step <= 0, n_steps < 0.
Trajectory lorentz_force_flow(const PhasePoint& initial, const EMField& field, const ChargedParticle& q, double step,
                              long n_steps);

/// Free flow with dτ/ds = m_E/m. The initial momentum must satisfy
/// p·p = −m_E²c²; spacelike p is rejected.
Trajectory free_flow_with_proper_time(const PhasePoint& initial, double m, double m_E, double step, long n_steps,
                                      double c = 1.0);

/// Closed-form flow of a constant field strength F: π(s) = exp(sΩ)π₀ with
/// Ω^μ_ν = (e/mc)F^μ_ν, x(s) = x₀ + (1/m)∫₀^s π. Returns samples at k·step.
Trajectory constant_field_solution(const PhasePoint& initial, const Mat4& F, const EMField& field,
                                   const ChargedParticle& q, double step, long n_steps);

struct CrossCheck {
  Trajectory covariant;
  /// Coordinate-time trajectory at t_n = x⁰_n/c, with x⁰ taken from the
  /// covariant samples and p⁰ reconstructed from H_t.
  Trajectory conventional;
  double max_spatial_deviation = 0.0;
  double rest_mass = 0.0;  ///< √(−π·π)/c of the initial data
};

/// Integrates H_t = cπ⁰ + eA⁰, π⁰ = √(π_iπ^i + m_E²c²), on (x^i, p^i) with the
/// coordinate-time steps of the covariant trajectory. Requires π⁰ > 0 and
/// timelike π initially.
CrossCheck conventional_Ht_crosscheck(const PhasePoint& initial, const EMField& field, const ChargedParticle& q,
                                      double step, long n_steps);

/// Ω = [[0, η], [−η, 0]], the canonical form in (x^μ, p^μ) coordinates.
Eigen::Matrix<double, 8, 8> symplectic_form();

/// Central-difference Jacobian of one implicit-midpoint step of H_s.
Eigen::Matrix<double, 8, 8> step_jacobian(const PhasePoint& z, const EMField& field, const ChargedParticle& q,
                                          double step);

}  // namespace hr13::classical
