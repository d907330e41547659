#include "hr13/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hr13/errors.hpp"

namespace hr13::field {

namespace {

void require_mode(const FockState& s, int mode) {
  if (mode < 0 || mode >= s.n_modes()) throw PreconditionError("mode index " + std::to_string(mode) + " out of range");
}

void require_same_space(const FockState& a, const FockState& b) {
  if (a.n_modes() != b.n_modes() || a.n_max() != b.n_max())
    throw PreconditionError("Fock states belong to different truncated spaces");
}

double phase_px(const Mode& m, const Vec4& x, double c, double hbar) {
  return (-m.energy / c * x[0] + m.p[0] * x[1] + m.p[1] * x[2] + m.p[2] * x[3]) / hbar;
}

void extend_basis(std::vector<Occupation>& out, Occupation& cur, int first, int n_modes, int remaining) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int m = first; m < n_modes; ++m) {
    cur.push_back(m);
    extend_basis(out, cur, m, n_modes, remaining - 1);
    cur.pop_back();
  }
}

}  // namespace

// ---------------------------------------------------------------------------

MomentumLattice::MomentumLattice(double dp, double m_E, double c, double hbar)
    : dp_(dp), m_E_(m_E), c_(c), hbar_(hbar), volume_(std::pow(2.0 * std::numbers::pi * hbar / dp, 3)) {
  if (!(dp > 0.0)) throw PreconditionError("lattice spacing must be positive");
  if (!(m_E >= 0.0)) throw PreconditionError("field mass m_E must be non-negative");
  if (!(c > 0.0) || !(hbar > 0.0)) throw PreconditionError("c and hbar must be positive");
}

void MomentumLattice::add(const std::array<double, 3>& p) {
  const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  modes_.push_back({p, c_ * std::sqrt(p2 + m_E_ * m_E_ * c_ * c_)});
}

MomentumLattice MomentumLattice::nearest(int n_modes, double dp, double m_E, double c, double hbar) {
  if (n_modes < 1) throw PreconditionError("lattice needs at least one mode");
  MomentumLattice lat(dp, m_E, c, hbar);
  const int R = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n_modes)))) + 2;
  std::vector<std::array<int, 3>> pts;
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j)
      for (int k = -R; k <= R; ++k) {
        if (m_E == 0.0 && i == 0 && j == 0 && k == 0) continue;
        pts.push_back({i, j, k});
      }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    const int na = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    const int nb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    return na != nb ? na < nb : a < b;
  });
  for (int n = 0; n < n_modes; ++n) lat.add({dp * pts[n][0], dp * pts[n][1], dp * pts[n][2]});
  return lat;
}

MomentumLattice MomentumLattice::box(int K, double cutoff, double m_E, double c, double hbar) {
  if (K < 1) throw PreconditionError("box lattice needs K >= 1");
  if (!(cutoff > 0.0)) throw PreconditionError("momentum cutoff must be positive");
  const double dp = cutoff / K;
  MomentumLattice lat(dp, m_E, c, hbar);
  for (int i = -K; i < K; ++i)
    for (int j = -K; j < K; ++j)
      for (int k = -K; k < K; ++k) lat.add({dp * (i + 0.5), dp * (j + 0.5), dp * (k + 0.5)});
  return lat;
}

// ---------------------------------------------------------------------------

FockState::FockState(int n_modes, int n_max) : n_modes_(n_modes), n_max_(n_max) {
  if (n_modes < 1) throw PreconditionError("Fock space needs at least one mode");
  if (n_max < 0) throw PreconditionError("truncation N_max must be non-negative");
}

FockState FockState::vacuum(int n_modes, int n_max) { return basis(n_modes, n_max, {}); }

FockState FockState::basis(int n_modes, int n_max, Occupation occ) {
  FockState s(n_modes, n_max);
  if (static_cast<int>(occ.size()) > n_max) throw TruncationOverflow("occupation exceeds N_max");
  std::sort(occ.begin(), occ.end());
  for (int m : occ) require_mode(s, m);
  s.amps_[std::move(occ)] = 1.0;
  return s;
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = amps_.find(occ);
  return it == amps_.end() ? Complex(0.0) : it->second;
}

void FockState::add(const Occupation& occ, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, inserted] = amps_.try_emplace(occ, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) amps_.erase(it);
  }
}

FockState& FockState::operator+=(const FockState& o) {
  require_same_space(*this, o);
  for (const auto& [occ, a] : o.amps_) add(occ, a);
  return *this;
}

FockState& FockState::operator-=(const FockState& o) {
  require_same_space(*this, o);
  for (const auto& [occ, a] : o.amps_) add(occ, -a);
  return *this;
}

FockState& FockState::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    amps_.clear();
    return *this;
  }
  for (auto& [occ, a] : amps_) a *= s;
  return *this;
}

double FockState::max_abs() const {
  double m = 0.0;
  for (const auto& [occ, a] : amps_) m = std::max(m, std::abs(a));
  return m;
}

int count(const Occupation& occ, int mode) {
  const auto [lo, hi] = std::equal_range(occ.begin(), occ.end(), mode);
  return static_cast<int>(hi - lo);
}

FockState apply_ladder(const FockState& state, int mode, Ladder kind) {
  require_mode(state, mode);
  FockState out(state.n_modes(), state.n_max());
  for (const auto& [occ, a] : state.amplitudes()) {
    const int n = count(occ, mode);
    Occupation next = occ;
    if (kind == Ladder::create) {
      if (static_cast<int>(occ.size()) >= state.n_max())
        throw TruncationOverflow("creation in mode " + std::to_string(mode) + " exceeds N_max = " +
                                 std::to_string(state.n_max()));
      next.insert(std::upper_bound(next.begin(), next.end(), mode), mode);
      out.add(next, a * std::sqrt(static_cast<double>(n + 1)));
    } else {
      if (n == 0) continue;
      next.erase(std::lower_bound(next.begin(), next.end(), mode));
      out.add(next, a * std::sqrt(static_cast<double>(n)));
    }
  }
  return out;
}

FockState multiparticle_state(const MomentumLattice& lattice, const std::vector<int>& modes, int n_max) {
  if (static_cast<int>(modes.size()) > n_max) throw TruncationOverflow("more particles than N_max");
  FockState s = FockState::vacuum(lattice.size(), n_max);
  double factor = 1.0;
  for (int m : modes) {
    s = apply_ladder(s, m, Ladder::create);
    factor *= 2.0 * lattice.energy(m);
  }
  return std::sqrt(factor) * s;
}

Complex fock_inner(const FockState& a, const FockState& b) {
  require_same_space(a, b);
  Complex s = 0.0;
  for (const auto& [occ, x] : a.amplitudes()) {
    const Complex y = b.amplitude(occ);
    if (y != Complex(0.0)) s += std::conj(x) * y;
  }
  return s;
}

Complex invariant_inner_product(const MomentumLattice& lattice, const FockState& a, const FockState& b) {
  for (const auto* s : {&a, &b})
    for (const auto& [occ, x] : s->amplitudes())
      if (occ.size() != 1) throw SectorMismatch("invariant inner product is defined on the one-particle sector");
  return lattice.volume() * fock_inner(a, b);
}

FockState field_operator_apply(const MomentumLattice& lattice, const FockState& state, const Vec4& x) {
  if (state.n_modes() != lattice.size()) throw PreconditionError("Fock state and lattice disagree on mode count");
  FockState out(state.n_modes(), state.n_max());
  const double c = lattice.c(), hbar = lattice.hbar();
  for (int m = 0; m < lattice.size(); ++m) {
    const double w = 1.0 / std::sqrt(2.0 * lattice.energy(m) * lattice.volume());
    const double ph = phase_px(lattice.mode(m), x, c, hbar);
    out += std::polar(w, -ph) * apply_ladder(state, m, Ladder::annihilate);
    out += std::polar(w, ph) * apply_ladder(state, m, Ladder::create);
  }
  return out;
}

FockState number_operator_apply(const FockState& state) {
  FockState out(state.n_modes(), state.n_max());
  for (const auto& [occ, a] : state.amplitudes()) out.add(occ, a * static_cast<double>(occ.size()));
  return out;
}

FockState phase_rotation(const FockState& state, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != state.n_modes()) throw PreconditionError("one phase per mode required");
  FockState out(state.n_modes(), state.n_max());
  for (const auto& [occ, a] : state.amplitudes()) {
    double ph = 0.0;
    for (int m : occ) ph += theta[m];
    out.add(occ, a * std::polar(1.0, ph));
  }
  return out;
}

std::vector<Occupation> fock_basis(int n_modes, int n_max) {
  if (n_modes < 1 || n_max < 0) throw PreconditionError("invalid Fock space dimensions");
  std::vector<Occupation> out;
  Occupation cur;
  for (int total = 0; total <= n_max; ++total) extend_basis(out, cur, 0, n_modes, total);
  return out;
}

Complex vacuum_two_point(const MomentumLattice& lattice, const Vec4& x, const Vec4& y) {
  const FockState vac = FockState::vacuum(lattice.size(), 1);
  return fock_inner(field_operator_apply(lattice, vac, x), field_operator_apply(lattice, vac, y));
}

}  // namespace hr13::field
