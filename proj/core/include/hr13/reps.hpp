#pragma once

// Operator realisations of H_R(1,3): a truncated four-mode oscillator for the
// Heisenberg-Weyl part, finite-dimensional (s_L, s_R) Lorentz representations,
// their product and two-particle composites.
//
// Index conventions: X̂_μ and P̂_μ carry lower indices, [X̂_μ, P̂_ν] = iħη_{μν}.
// Lorentz tensors are stored by the six ordered pairs (01,02,03,12,13,23);
// see algebra::lorentz_pair_index.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "hr13/algebra.hpp"
#include "hr13/linear_operator.hpp"

namespace hr13::reps {

/// Six antisymmetric components T_{μν}, μ < ν.
using LorentzTensor = std::array<LinearOperator, 6>;

/// T_{μν} for any index order (T_{νμ} = -T_{μν}, T_{μμ} = 0).
LinearOperator component(const LorentzTensor& t, int mu, int nu);

/// Truncated oscillator realisation of the Heisenberg-Weyl subalgebra.
/// Mode k carries X̂_k ∝ (a+a†), P̂_k ∝ i(a†−a); mode 0 takes the opposite sign on
/// P̂_0 so that [X̂_0, P̂_0] = −iħ. All four operators stay Hermitian.
class HeisenbergRep {
public:
  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return dim_; }

  const LinearOperator& X(int mu) const { return x_.at(mu); }
  const LinearOperator& P(int mu) const { return p_.at(mu); }
  const LinearOperator& M() const { return m_; }
  const LinearOperator& identity() const { return id_; }
  /// a_k, the truncated annihilator of mode k.
  const LinearOperator& annihilator(int k) const { return a_.at(k); }

  /// L̂_{μν} = X̂_μP̂_ν − P̂_μX̂_ν.
  LinearOperator L(int mu, int nu) const;
  LorentzTensor orbital() const;

  std::array<int, 4> occupation(Eigen::Index index) const;
  Eigen::Index index_of(const std::array<int, 4>& occupation) const;

  /// States with every mode occupation <= cutoff - depth. Depth 2 is the
  /// interior on which the bilinear relations are exact; products of three
  /// ladder operators in one mode need depth 3.
  BasisMask interior(int depth = 2) const;

  friend HeisenbergRep build_heisenberg_rep(double m, int cutoff, double hbar);

private:
  double mass_ = 1.0;
  double hbar_ = 1.0;
  int cutoff_ = 0;
  Eigen::Index dim_ = 0;
  std::array<LinearOperator, 4> a_, x_, p_;
  LinearOperator m_, id_;
};

/// Four-mode truncated oscillator with `cutoff` levels per mode. Rejects m <= 0
/// and cutoff < 4.
HeisenbergRep build_heisenberg_rep(double m, int cutoff, double hbar = 1.0);

/// Finite-dimensional Lorentz representation labelled by two spins. The
/// chiral su(2) generators are Ŝ^±_k = ½(Ĵ_k ± iB̂_k), with Ĵ_k = ½ε_kij Ŝ_ij and
/// B̂_k = Ŝ_{0k}; Ŝ^+ carries spin s_L and Ŝ^− spin s_R in the |s, m_s⟩ basis.
class SpinRep {
public:
  double s_left() const { return s_left_; }
  double s_right() const { return s_right_; }
  double hbar() const { return hbar_; }
  Eigen::Index dim() const { return S_[0].dim(); }

  /// Ŝ_{μν}, any index order.
  LinearOperator S(int mu, int nu) const { return component(S_, mu, nu); }
  const LorentzTensor& tensor() const { return S_; }
  const LinearOperator& S_plus(int k) const { return plus_.at(k - 1); }
  const LinearOperator& S_minus(int k) const { return minus_.at(k - 1); }

  friend SpinRep build_spin_rep(double s_left, double s_right, double hbar);

private:
  double s_left_ = 0.0;
  double s_right_ = 0.0;
  double hbar_ = 1.0;
  LorentzTensor S_;
  std::array<LinearOperator, 3> plus_, minus_;
};

/// Rejects spins that are negative or not half-integers.
SpinRep build_spin_rep(double s_left, double s_right, double hbar = 1.0);

/// Standard su(2) matrices (J_x, J_y, J_z)·ħ for spin s, basis m = s..−s.
std::array<LinearOperator, 3> su2_generators(double s, double hbar);

/// Values of the two Lorentz Casimirs on a tensor Ŝ_{μν}:
///   C1 = ½ Ŝ_{μν}Ŝ^{μν},   C2 = −(i/4) ε^{μνρσ} Ŝ_{μν}Ŝ_{ρσ}   (ε_{0123} = +1).
/// The −i makes C2 real on the (s_L, s_R) representations built here, where
/// ¼εŜŜ itself is 2iħ²[s_L(s_L+1) − s_R(s_R+1)].
struct CasimirValues {
  Complex c1;
  Complex c2;
  double scalar_defect = 0.0;  ///< max deviation of either operator from c·Î
};

LinearOperator casimir_c1(const LorentzTensor& s);
LinearOperator casimir_c2(const LorentzTensor& s);
CasimirValues casimir_values(const LorentzTensor& s);
CasimirValues casimir_spin(const SpinRep& rep);

/// 2ħ²[s_L(s_L+1) ± s_R(s_R+1)].
std::pair<double, double> expected_casimirs(double s_left, double s_right, double hbar);

/// Heisenberg ⊗ spin with Ĵ_{μν} = L̂_{μν}⊗Î + Î⊗Ŝ_{μν}.
class FullRep {
public:
  FullRep(HeisenbergRep heisenberg, SpinRep spin);

  const HeisenbergRep& heisenberg() const { return heisenberg_; }
  const SpinRep& spin() const { return spin_; }
  double mass() const { return heisenberg_.mass(); }
  double hbar() const { return heisenberg_.hbar(); }
  Eigen::Index dim() const { return id_.dim(); }

  const LinearOperator& X(int mu) const { return x_.at(mu); }
  const LinearOperator& P(int mu) const { return p_.at(mu); }
  const LinearOperator& identity() const { return id_; }
  LinearOperator J(int mu, int nu) const { return component(j_, mu, nu); }
  LinearOperator S(int mu, int nu) const { return component(s_, mu, nu); }
  const LorentzTensor& J() const { return j_; }
  const LorentzTensor& S() const { return s_; }

  BasisMask interior(int depth = 2) const;

private:
  HeisenbergRep heisenberg_;
  SpinRep spin_;
  std::array<LinearOperator, 4> x_, p_;
  LorentzTensor j_, s_;
  LinearOperator id_;
};

/// [X̂_μ, P̂_νP̂^ν], which equals 2iħP̂_μ on states of depth >= 3.
LinearOperator onshell_violation_commutator(const HeisenbergRep& rep, int mu);
/// P̂_νP̂^ν.
LinearOperator momentum_square(const HeisenbergRep& rep);

// ---------------------------------------------------------------------------
// Generator realisations and the bracket suite.

/// Operators for (a subset of) the 15 abstract generators at a given c.
struct Realization {
  std::array<std::optional<LinearOperator>, algebra::kGeneratorCount> ops;
  double hbar = 1.0;
  double c = 1.0;
  BasisMask interior;
  std::string label;
};

/// Ŷ_μ = mX̂_μ, Ê_μ = cP̂_μ, M̂ = mÎ, Ĵ'_{μν} = cL̂_{μν}.
Realization realize(const HeisenbergRep& rep, double c);
/// Lorentz generators only: Ĵ'_{μν} = cŜ_{μν}.
Realization realize(const SpinRep& rep, double c);
/// All fifteen, Ĵ'_{μν} = cĴ_{μν}.
Realization realize(const FullRep& rep, double c);

struct BracketDefect {
  algebra::GeneratorId a, b;
  double relative_defect = 0.0;  ///< ‖([Â,B̂] − Σ iħc r_g Ĝ)|interior‖ / (‖Â‖‖B̂‖)
};

struct BracketReport {
  std::string label;
  std::vector<BracketDefect> brackets;
  double max_relative_defect = 0.0;
  bool pass(double tolerance = 1e-12) const { return max_relative_defect <= tolerance; }
};

/// Checks every bracket of the structure table whose generators (and result
/// terms) are all realised, restricted to the realisation's interior states.
BracketReport check_brackets(const Realization& r);

/// K̂_i as the c-rescaled boost J'_{i0}/c² of `full`, realised with
/// X̂_0 = −cT̂ and P̂_0 = −Ĥ/c where T̂ = −X̂_0 and Ĥ = −P̂_0 are taken from the
/// c = 1 construction. Returns (K̂_i, P̂_iT̂).
std::pair<LinearOperator, LinearOperator> contracted_boost(const FullRep& full, int i, double c);

}  // namespace hr13::reps
