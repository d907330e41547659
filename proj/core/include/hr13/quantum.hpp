#pragma once

// Wavefunctions ψ(x^μ) on a periodic 1+d spacetime grid (d = 1 or 3) with
// spectral derivatives. Axis a carries the coordinate x^a; X̂_μ multiplies by
// x_μ = η_{μμ}x^μ and P̂_μ = −iħ∂_μ, so [X̂_μ, P̂_ν] = iħη_{μν}. The inner
// product is plain L² over the grid.

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hr13/minkowski.hpp"

namespace hr13::quantum {

using Complex = std::complex<double>;

struct Grid {
  int spatial_dims = 1;
  std::vector<int> points;      ///< per axis, 1 + spatial_dims entries
  std::vector<double> lengths;  ///< periodic extents per axis

  /// Rejects spatial_dims outside {1, 3}, non-positive lengths, and < 4 or odd points.
  static Grid make(int spatial_dims, std::vector<int> points, std::vector<double> lengths);

  int axes() const { return spatial_dims + 1; }
  std::size_t size() const;
  double spacing(int axis) const { return lengths[axis] / points[axis]; }
  /// x^a at index j, centered so the box spans [−L/2, L/2).
  double coordinate(int axis, int j) const { return (j - points[axis] / 2) * spacing(axis); }
  /// FFT wavenumber 2πn/L with n in [−N/2, N/2).
  double wavenumber(int axis, int j) const;
  double nyquist(int axis) const;
  /// Row-major multi-index, last axis fastest.
  std::array<int, 4> unravel(std::size_t flat) const;
  /// x^μ at a flat index; unused spatial slots are zero.
  Vec4 point(std::size_t flat) const;
  Vec4 k_vector(std::size_t flat) const;  ///< k_μ (lower), ψ ∝ e^{ik_μx^μ}
};

struct GridWavefunction {
  Grid grid;
  std::vector<Complex> values;
  double hbar = 1.0;
  double c = 1.0;

  double norm() const;  ///< √(Σ|ψ|² ΔV)
  double cell_volume() const;
};

/// Forward/backward transforms (unitary up to the 1/N on the backward pass).
std::vector<Complex> fft_forward(const Grid& g, const std::vector<Complex>& v);
std::vector<Complex> fft_backward(const Grid& g, const std::vector<Complex>& v);

Complex inner(const GridWavefunction& a, const GridWavefunction& b);

GridWavefunction apply_X(const GridWavefunction& psi, int mu);
GridWavefunction apply_P(const GridWavefunction& psi, int mu);
/// P̂_μP̂^μ = ħ²k·k in the spectral representation.
GridWavefunction apply_PP(const GridWavefunction& psi);
GridWavefunction scaled(const GridWavefunction& psi, Complex s);
GridWavefunction operator+(const GridWavefunction& a, const GridWavefunction& b);
GridWavefunction operator-(const GridWavefunction& a, const GridWavefunction& b);

/// ψ(x) = exp(ip_μx^μ/ħ) with p_μ (lower index) given as `p_lower`.
GridWavefunction plane_wave(const Grid& g, const Vec4& p_lower, double hbar = 1.0, double c = 1.0);
/// Gaussian envelope exp(−Σ(x^a−x̄^a)²/4σ_a²) times exp(ip_μx^μ/ħ), normalized.
GridWavefunction gaussian_packet(const Grid& g, const Vec4& center, const Vec4& p_lower, const Vec4& sigma,
                                 double hbar = 1.0, double c = 1.0);

struct Moments {
  Vec4 x{};   ///< ⟨X̂^μ⟩ (upper)
  Vec4 p{};   ///< ⟨P̂^μ⟩ (upper)
  double pp_mean = 0.0;
  double pp_variance = 0.0;
  double norm = 0.0;
};
Moments moments(const GridWavefunction& psi);

/// Requires every axis to satisfy √⟨k_a²⟩ <= k_Nyquist/4 (>= 8 points per wavelength).
void check_resolution(const GridWavefunction& psi);

struct EvolutionConfig {
  double m = 1.0;
  std::optional<double> m_E;
  double ds = 0.0;
  long n_steps = 0;
  std::function<double(const Vec4&)> V;  ///< optional potential V(x^μ)
  long record_every = 1;
};

struct EvolutionRecord {
  double s = 0.0;
  Moments moments;
};

struct Evolution {
  GridWavefunction final_state;
  std::vector<EvolutionRecord> history;
};

/// Strang split-step integration of iħ∂_sψ = (P̂·P̂/2m + V)ψ. With V absent a
/// step is the exact phase exp(−iħk·k ds/2m) per Fourier mode.
Evolution evolve_s(const GridWavefunction& psi, const EvolutionConfig& cfg);

/// ‖ħ²∂_μ∂^μψ − m_E²c²ψ‖ / ‖ψ‖, evaluated spectrally.
double klein_gordon_residual(const GridWavefunction& psi, double m_E);

struct OffshellSpread {
  double before_mean = 0.0, before_variance = 0.0;
  double after_mean = 0.0, after_variance = 0.0;
  /// ⟨P̂·P̂⟩ after X̂_μ, obtained through [X̂_μ, P̂·P̂] = 2iħP̂_μ instead of direct application.
  double predicted_after_mean = 0.0;
  /// 2p^ν δ⟨P̂_ν⟩, the mean shift to first order in the peak width.
  double first_order_shift = 0.0;
  double relative_spread_before = 0.0;
};

/// Applies X̂_μ and compares P̂·P̂ statistics. Requires relative spread
/// √Var/|mean| <= 1e−2 before; rejects a vanishing X̂_μψ.
OffshellSpread offshell_spread(const GridWavefunction& psi, int mu);

}  // namespace hr13::quantum
