#include "hr13/quantum.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "hr13/errors.hpp"

namespace hr13::quantum {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> transform(const Grid& g, const std::vector<Complex>& v, int sign) {
  if (v.size() != g.size()) throw std::invalid_argument("wavefunction size does not match grid");
  std::vector<Complex> out(v.size());
  auto* in = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(v.data()));
  auto* o = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(g.axes(), g.points.data(), in, o, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

double k_dot_k(const Vec4& k) { return dot(k, k); }

void require_index(const GridWavefunction& psi, int mu) {
  if (mu < 0 || mu >= psi.grid.axes()) throw PreconditionError("Minkowski index outside the grid's axes");
}

GridWavefunction with_values(const GridWavefunction& like, std::vector<Complex> values) {
  GridWavefunction out{like.grid, std::move(values), like.hbar, like.c};
  return out;
}

/// Multiplies ψ̂ by a function of k_μ and transforms back.
template <class F>
GridWavefunction spectral_apply(const GridWavefunction& psi, F&& symbol) {
  auto hat = fft_forward(psi.grid, psi.values);
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= symbol(psi.grid.k_vector(i));
  return with_values(psi, fft_backward(psi.grid, hat));
}

struct SpectralStats {
  Vec4 p_lower{};
  double pp_mean = 0.0;
  double pp_second = 0.0;
};

SpectralStats spectral_stats(const GridWavefunction& psi) {
  const auto hat = fft_forward(psi.grid, psi.values);
  const double h = psi.hbar;
  SpectralStats st;
  double total = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const double w = std::norm(hat[i]);
    if (w == 0.0) continue;
    const Vec4 k = psi.grid.k_vector(i);
    const double pp = h * h * k_dot_k(k);
    total += w;
    for (int mu = 0; mu < 4; ++mu) st.p_lower[mu] += w * h * k[mu];
    st.pp_mean += w * pp;
    st.pp_second += w * pp * pp;
  }
  if (total == 0.0) throw PreconditionError("zero wavefunction");
  for (double& v : st.p_lower) v /= total;
  st.pp_mean /= total;
  st.pp_second /= total;
  return st;
}

}  // namespace

Grid Grid::make(int spatial_dims, std::vector<int> points, std::vector<double> lengths) {
  if (spatial_dims != 1 && spatial_dims != 3) throw PreconditionError("grids support 1 or 3 spatial dimensions");
  const auto axes = static_cast<std::size_t>(spatial_dims + 1);
  if (points.size() != axes || lengths.size() != axes)
    throw PreconditionError("grid needs one point count and one length per axis");
  for (std::size_t a = 0; a < axes; ++a) {
    if (points[a] < 4 || points[a] % 2 != 0) throw PreconditionError("grid point counts must be even and >= 4");
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) throw PreconditionError("grid lengths must be positive");
  }
  return {spatial_dims, std::move(points), std::move(lengths)};
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int p : points) n *= static_cast<std::size_t>(p);
  return n;
}

double Grid::wavenumber(int axis, int j) const {
  const int n = points[axis];
  const int f = j < n / 2 ? j : j - n;
  return 2.0 * std::numbers::pi * f / lengths[axis];
}

double Grid::nyquist(int axis) const { return std::numbers::pi / spacing(axis); }

std::array<int, 4> Grid::unravel(std::size_t flat) const {
  std::array<int, 4> idx{};
  for (int a = axes() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points[a]));
    flat /= static_cast<std::size_t>(points[a]);
  }
  return idx;
}

Vec4 Grid::point(std::size_t flat) const {
  const auto idx = unravel(flat);
  Vec4 x{};
  for (int a = 0; a < axes(); ++a) x[a] = coordinate(a, idx[a]);
  return x;
}

Vec4 Grid::k_vector(std::size_t flat) const {
  const auto idx = unravel(flat);
  Vec4 k{};
  for (int a = 0; a < axes(); ++a) k[a] = wavenumber(a, idx[a]);
  return k;
}

double GridWavefunction::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < grid.axes(); ++a) v *= grid.spacing(a);
  return v;
}

double GridWavefunction::norm() const {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return std::sqrt(s * cell_volume());
}

std::vector<Complex> fft_forward(const Grid& g, const std::vector<Complex>& v) { return transform(g, v, FFTW_FORWARD); }

std::vector<Complex> fft_backward(const Grid& g, const std::vector<Complex>& v) {
  auto out = transform(g, v, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (auto& z : out) z *= inv;
  return out;
}

Complex inner(const GridWavefunction& a, const GridWavefunction& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("inner product across different grids");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
  return s * a.cell_volume();
}

GridWavefunction apply_X(const GridWavefunction& psi, int mu) {
  require_index(psi, mu);
  auto out = psi;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= eta(mu) * psi.grid.point(i)[mu];
  return out;
}

GridWavefunction apply_P(const GridWavefunction& psi, int mu) {
  require_index(psi, mu);
  return spectral_apply(psi, [&](const Vec4& k) { return Complex(psi.hbar * k[mu]); });
}

GridWavefunction apply_PP(const GridWavefunction& psi) {
  const double h2 = psi.hbar * psi.hbar;
  return spectral_apply(psi, [&](const Vec4& k) { return Complex(h2 * k_dot_k(k)); });
}

GridWavefunction scaled(const GridWavefunction& psi, Complex s) {
  auto out = psi;
  for (auto& z : out.values) z *= s;
  return out;
}

GridWavefunction operator+(const GridWavefunction& a, const GridWavefunction& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("sum across different grids");
  auto out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

GridWavefunction operator-(const GridWavefunction& a, const GridWavefunction& b) { return a + scaled(b, -1.0); }

GridWavefunction plane_wave(const Grid& g, const Vec4& p_lower, double hbar, double c) {
  GridWavefunction psi{g, std::vector<Complex>(g.size()), hbar, c};
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const Vec4 x = g.point(i);
    double phase = 0.0;
    for (int mu = 0; mu < 4; ++mu) phase += p_lower[mu] * x[mu];
    psi.values[i] = std::polar(1.0, phase / hbar);
  }
  return psi;
}

GridWavefunction gaussian_packet(const Grid& g, const Vec4& center, const Vec4& p_lower, const Vec4& sigma,
                                 double hbar, double c) {
  for (int a = 0; a < g.axes(); ++a)
    if (!(sigma[a] > 0.0)) throw PreconditionError("packet widths must be positive");
  GridWavefunction psi{g, std::vector<Complex>(g.size()), hbar, c};
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const Vec4 x = g.point(i);
    double env = 0.0, phase = 0.0;
    for (int a = 0; a < g.axes(); ++a) {
      const double d = x[a] - center[a];
      env += d * d / (4.0 * sigma[a] * sigma[a]);
      phase += p_lower[a] * x[a];
    }
    psi.values[i] = std::polar(std::exp(-env), phase / hbar);
  }
  return scaled(psi, 1.0 / psi.norm());
}

Moments moments(const GridWavefunction& psi) {
  Moments m;
  double total = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    const double w = std::norm(psi.values[i]);
    const Vec4 x = psi.grid.point(i);
    total += w;
    for (int mu = 0; mu < 4; ++mu) m.x[mu] += w * x[mu];
  }
  if (total == 0.0) throw PreconditionError("zero wavefunction");
  for (double& v : m.x) v /= total;
  const auto st = spectral_stats(psi);
  m.p = raise(st.p_lower);
  m.pp_mean = st.pp_mean;
  m.pp_variance = std::fmax(0.0, st.pp_second - st.pp_mean * st.pp_mean);
  m.norm = psi.norm();
  return m;
}

void check_resolution(const GridWavefunction& psi) {
  const auto hat = fft_forward(psi.grid, psi.values);
  std::array<double, 4> k2{};
  double total = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const double w = std::norm(hat[i]);
    const Vec4 k = psi.grid.k_vector(i);
    total += w;
    for (int a = 0; a < psi.grid.axes(); ++a) k2[a] += w * k[a] * k[a];
  }
  if (total == 0.0) throw PreconditionError("zero wavefunction");
  for (int a = 0; a < psi.grid.axes(); ++a) {
    const double rms = std::sqrt(k2[a] / total);
    if (rms > psi.grid.nyquist(a) / 4.0)
      throw PreconditionError("grid under-resolves the wavefunction on axis " + std::to_string(a) +
                              " (rms wavenumber " + std::to_string(rms) + " > k_Nyquist/4)");
  }
}

Evolution evolve_s(const GridWavefunction& psi, const EvolutionConfig& cfg) {
  if (!(cfg.m > 0.0)) throw PreconditionError("mass m must be positive");
  if (!(cfg.ds > 0.0) && cfg.n_steps > 0) throw PreconditionError("step ds must be positive");
  if (cfg.n_steps < 0) throw PreconditionError("n_steps must be non-negative");
  if (cfg.record_every < 1) throw PreconditionError("record_every must be >= 1");
  check_resolution(psi);

  const Grid& g = psi.grid;
  const double h = psi.hbar;
  std::vector<Complex> kinetic(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    kinetic[i] = std::polar(1.0, -h * k_dot_k(g.k_vector(i)) * cfg.ds / (2.0 * cfg.m));

  std::vector<Complex> half_potential;
  if (cfg.V) {
    half_potential.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v = cfg.V(g.point(i));
      if (!std::isfinite(v)) throw PreconditionError("potential is not bounded on the grid");
      half_potential[i] = std::polar(1.0, -v * cfg.ds / (2.0 * h));
    }
  }

  Evolution out{psi, {}};
  out.history.push_back({0.0, moments(psi)});
  auto& values = out.final_state.values;
  for (long n = 0; n < cfg.n_steps; ++n) {
    if (cfg.V)
      for (std::size_t i = 0; i < values.size(); ++i) values[i] *= half_potential[i];
    auto hat = fft_forward(g, values);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= kinetic[i];
    values = fft_backward(g, hat);
    if (cfg.V)
      for (std::size_t i = 0; i < values.size(); ++i) values[i] *= half_potential[i];

    if (!std::isfinite(out.final_state.norm()))
      throw NumericalError("non-finite wavefunction at step " + std::to_string(n + 1));
    if ((n + 1) % cfg.record_every == 0 || n + 1 == cfg.n_steps)
      out.history.push_back({static_cast<double>(n + 1) * cfg.ds, moments(out.final_state)});
  }
  return out;
}

double klein_gordon_residual(const GridWavefunction& psi, double m_E) {
  const auto hat = fft_forward(psi.grid, psi.values);
  const double h2 = psi.hbar * psi.hbar;
  const double mass_term = m_E * m_E * psi.c * psi.c;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const double w = std::norm(hat[i]);
    const double symbol = -h2 * k_dot_k(psi.grid.k_vector(i)) - mass_term;
    num += symbol * symbol * w;
    den += w;
  }
  if (den == 0.0) throw PreconditionError("Klein-Gordon residual of a zero wavefunction");
  return std::sqrt(num / den);
}

OffshellSpread offshell_spread(const GridWavefunction& psi, int mu) {
  require_index(psi, mu);
  const auto before = spectral_stats(psi);
  OffshellSpread out;
  out.before_mean = before.pp_mean;
  out.before_variance = std::fmax(0.0, before.pp_second - before.pp_mean * before.pp_mean);
  out.relative_spread_before = std::sqrt(out.before_variance) / std::fabs(out.before_mean);
  if (!(out.relative_spread_before <= 1e-2))
    throw PreconditionError("packet is not sharply peaked in P.P (relative spread " +
                            std::to_string(out.relative_spread_before) + " > 1e-2)");

  const auto x_psi = apply_X(psi, mu);
  const double n2 = inner(x_psi, x_psi).real();
  if (!(n2 > 1e-24 * std::pow(psi.norm(), 2))) throw PreconditionError("X acting on the packet gives zero");

  const auto after = spectral_stats(x_psi);
  out.after_mean = after.pp_mean;
  out.after_variance = std::fmax(0.0, after.pp_second - after.pp_mean * after.pp_mean);

  const Complex via_commutator =
      inner(apply_X(x_psi, mu), apply_PP(psi)) - Complex(0.0, 2.0 * psi.hbar) * inner(x_psi, apply_P(psi, mu));
  out.predicted_after_mean = via_commutator.real() / n2;

  const Vec4 p_upper = raise(before.p_lower);
  for (int nu = 0; nu < 4; ++nu) out.first_order_shift += 2.0 * p_upper[nu] * (after.p_lower[nu] - before.p_lower[nu]);
  return out;
}

}  // namespace hr13::quantum
