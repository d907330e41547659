#pragma once

// Scalar field on a finite momentum lattice. Continuum relations map as
// (2π)³δ³(p−q) → V·δ_pq and ∫d³p/(2π)³ → (1/V)Σ_p with V = (2πħ/Δp)³.

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "hr13/minkowski.hpp"

namespace hr13::field {

using Complex = std::complex<double>;

struct Mode {
  std::array<double, 3> p{};
  double energy = 0.0;  ///< E_p = c√(|p⃗|² + m_E²c²)
};

class MomentumLattice {
public:
  /// The first `n_modes` points Δp·n⃗, n⃗ ∈ ℤ³, ordered by |n⃗|² then
  /// lexicographically. The zero mode is skipped when m_E = 0.
  static MomentumLattice nearest(int n_modes, double dp, double m_E, double c = 1.0, double hbar = 1.0);
  /// Cell centers Δp(n⃗ + ½) filling the box |p_i| < cutoff, Δp = cutoff/K.
  /// The half shift keeps p⃗ = 0 off the lattice.
  static MomentumLattice box(int K, double cutoff, double m_E, double c = 1.0, double hbar = 1.0);

  int size() const { return static_cast<int>(modes_.size()); }
  const Mode& mode(int i) const { return modes_.at(static_cast<std::size_t>(i)); }
  double energy(int i) const { return mode(i).energy; }
  double volume() const { return volume_; }
  double spacing() const { return dp_; }
  double m_E() const { return m_E_; }
  double c() const { return c_; }
  double hbar() const { return hbar_; }

private:
  MomentumLattice(double dp, double m_E, double c, double hbar);
  void add(const std::array<double, 3>& p);

  std::vector<Mode> modes_;
  double dp_, m_E_, c_, hbar_, volume_;
};

/// Occupied modes as a sorted multiset of mode indices; its size is the
/// total occupation.
using Occupation = std::vector<int>;

class FockState {
public:
  FockState(int n_modes, int n_max);

  static FockState vacuum(int n_modes, int n_max);
  static FockState basis(int n_modes, int n_max, Occupation occ);

  int n_modes() const { return n_modes_; }
  int n_max() const { return n_max_; }
  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }
  Complex amplitude(const Occupation& occ) const;
  bool is_zero() const { return amps_.empty(); }

  /// Adds c to the amplitude of occ; exact zeros are dropped.
  void add(const Occupation& occ, Complex c);

  FockState& operator+=(const FockState& o);
  FockState& operator-=(const FockState& o);
  FockState& operator*=(Complex s);
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(Complex s, FockState a) { return a *= s; }

  /// max |amplitude|.
  double max_abs() const;

private:
  int n_modes_;
  int n_max_;
  std::map<Occupation, Complex> amps_;
};

/// Occupation of `mode` in occ.
int count(const Occupation& occ, int mode);

enum class Ladder { create, annihilate };

/// Bosonic action with √(n+1) and √n factors. Creating past n_max throws
/// TruncationOverflow.
FockState apply_ladder(const FockState& state, int mode, Ladder kind);

/// √(2E_1⋯2E_n) â†_{p_1}⋯â†_{p_n}|0⟩.
FockState multiparticle_state(const MomentumLattice& lattice, const std::vector<int>& modes, int n_max);

/// Plain Fock inner product Σ conj(a)b.
Complex fock_inner(const FockState& a, const FockState& b);

/// Lorentz-invariant inner product on the one-particle sector, V·Σ conj(a)b,
/// so ⟨p|q⟩ = 2E_pV·δ_pq for the states of multiparticle_state. Throws
/// SectorMismatch outside that sector.
Complex invariant_inner_product(const MomentumLattice& lattice, const FockState& a, const FockState& b);

/// φ(x) = Σ_p (e^{−ip·x/ħ}â_p + e^{ip·x/ħ}â†_p)/√(2E_pV), p·x = p_μx^μ with p⁰ = E_p/c.
FockState field_operator_apply(const MomentumLattice& lattice, const FockState& state, const Vec4& x);

/// N̂ = Σ â†â.
FockState number_operator_apply(const FockState& state);
/// Π_p exp(iθ_p n̂_p).
FockState phase_rotation(const FockState& state, const std::vector<double>& theta);

/// All occupations with total <= n_max, ordered by total then lexicographically.
std::vector<Occupation> fock_basis(int n_modes, int n_max);

/// ⟨0|φ(x)φ(y)|0⟩, evaluated as the Fock inner product of φ(x)|0⟩ and φ(y)|0⟩.
Complex vacuum_two_point(const MomentumLattice& lattice, const Vec4& x, const Vec4& y);

}  // namespace hr13::field
