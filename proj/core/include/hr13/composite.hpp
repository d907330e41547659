#pragma once

// Two-particle composites built on the tensor product of two FullReps.

#include "hr13/reps.hpp"

namespace hr13::reps {

/// Every single-particle generator acts as Ĝ_a⊗Î + Î⊗Ĝ_b.
///   X̂ = (m_aX̂_a + m_bX̂_b)/m,  P̂ = P̂_a + P̂_b,
///   R̂ = X̂_a − X̂_b,           Q̂ = (m_aP̂_b − m_bP̂_a)/m,
/// so that [X̂_μ, P̂_ν] = iħη_{μν} and [R̂_μ, Q̂_ν] = −iħη_{μν}.
struct CompositeRep {
  double mass_a = 0.0;
  double mass_b = 0.0;
  double mass = 0.0;
  double reduced_mass = 0.0;
  double hbar = 1.0;
  std::array<LinearOperator, 4> X, P, R, Q;
  LorentzTensor J;      ///< additive Ĵ_a + Ĵ_b
  LorentzTensor S_sum;  ///< Ŝ_a + Ŝ_b
  LinearOperator identity;
  BasisMask interior;
};

/// Requires equal cutoffs and ħ on both factors.
CompositeRep product_rep(const FullRep& a, const FullRep& b);

/// X̂_μP̂_ν − P̂_μX̂_ν for the center-of-mass pair.
LorentzTensor orbital_cm(const CompositeRep& rep);

/// Internal angular momentum Ŝ = Ŝ_a + Ŝ_b − (R̂_μQ̂_ν − Q̂_μR̂_ν); with it
/// L̂_cm + Ŝ equals the additive Ĵ as a matrix identity.
LorentzTensor composite_spin_tensor(const CompositeRep& rep);

/// Ŝ_a⊗Î + Î⊗Ŝ_b on the bare spin factors.
LorentzTensor product_spin(const SpinRep& a, const SpinRep& b);

/// All fifteen generators of the composite: Ŷ = mX̂, Ê = cP̂, M̂ = mÎ, Ĵ' = cĴ.
Realization realize(const CompositeRep& rep, double c);

}  // namespace hr13::reps
