#include "hr13/reps.hpp"

#include <cmath>
#include <limits>

#include "hr13/errors.hpp"
#include "hr13/minkowski.hpp"

namespace hr13::reps {

using algebra::GeneratorId;
using algebra::GeneratorKind;
using algebra::lorentz_pair;
using algebra::lorentz_pair_index;

namespace {

constexpr Complex kI{0.0, 1.0};

LinearOperator single_mode_annihilator(int n) {
  SparseMatrix a(n, n);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  a.setFromTriplets(t.begin(), t.end());
  return {std::move(a), "mode"};
}

/// Embeds a single-mode operator into the four-mode space; mode 0 runs fastest.
LinearOperator embed(const LinearOperator& op, int mode, int n) {
  const auto id = LinearOperator::identity(n, "mode");
  LinearOperator out = mode == 3 ? op : id;
  for (int k = 2; k >= 0; --k) out = kron(out, k == mode ? op : id);
  return {out.matrix(), "osc4[" + std::to_string(n) + "]"};
}

bool is_half_integer(double s) {
  const double twice = 2.0 * s;
  return s >= 0.0 && std::fabs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

LinearOperator component(const LorentzTensor& t, int mu, int nu) {
  if (mu == nu) return LinearOperator::zero(t[0].dim(), t[0].basis_label());
  if (mu < nu) return t[lorentz_pair_index(mu, nu)];
  return Complex(-1.0) * t[lorentz_pair_index(nu, mu)];
}

// ---------------------------------------------------------------------------

HeisenbergRep build_heisenberg_rep(double m, int cutoff, double hbar) {
  if (!(m > 0.0) || !std::isfinite(m)) throw PreconditionError("Heisenberg representation requires mass m > 0");
  if (cutoff < 4) throw PreconditionError("Heisenberg representation requires cutoff >= 4 (got " +
                                          std::to_string(cutoff) + ")");
  if (!(hbar > 0.0)) throw PreconditionError("hbar must be positive");

  HeisenbergRep rep;
  rep.mass_ = m;
  rep.hbar_ = hbar;
  rep.cutoff_ = cutoff;
  rep.dim_ = static_cast<Eigen::Index>(cutoff) * cutoff * cutoff * cutoff;

  const auto a1 = single_mode_annihilator(cutoff);
  const auto ad1 = a1.adjoint();
  const double scale = std::sqrt(hbar / 2.0);
  const auto x1 = Complex(scale) * (a1 + ad1);
  const auto p1 = (kI * scale) * (ad1 - a1);

  for (int k = 0; k < 4; ++k) {
    rep.a_[k] = embed(a1, k, cutoff);
    rep.x_[k] = embed(x1, k, cutoff);
    rep.p_[k] = embed(k == 0 ? Complex(-1.0) * p1 : p1, k, cutoff);
  }
  rep.id_ = LinearOperator::identity(rep.dim_, rep.x_[0].basis_label());
  rep.m_ = Complex(m) * rep.id_;
  return rep;
}

LinearOperator HeisenbergRep::L(int mu, int nu) const { return X(mu) * P(nu) - P(mu) * X(nu); }

LorentzTensor HeisenbergRep::orbital() const {
  LorentzTensor out;
  for (int k = 0; k < 6; ++k) {
    const auto [mu, nu] = lorentz_pair(k);
    out[k] = L(mu, nu);
  }
  return out;
}

std::array<int, 4> HeisenbergRep::occupation(Eigen::Index index) const {
  std::array<int, 4> occ{};
  for (int k = 0; k < 4; ++k) {
    occ[k] = static_cast<int>(index % cutoff_);
    index /= cutoff_;
  }
  return occ;
}

Eigen::Index HeisenbergRep::index_of(const std::array<int, 4>& occ) const {
  Eigen::Index idx = 0;
  for (int k = 3; k >= 0; --k) {
    if (occ[k] < 0 || occ[k] >= cutoff_) throw std::out_of_range("occupation outside truncation");
    idx = idx * cutoff_ + occ[k];
  }
  return idx;
}

BasisMask HeisenbergRep::interior(int depth) const {
  BasisMask mask(static_cast<std::size_t>(dim_), 0);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    const auto occ = occupation(i);
    bool inside = true;
    for (int n : occ) inside = inside && n <= cutoff_ - depth;
    mask[i] = static_cast<char>(inside);
  }
  return mask;
}

// ---------------------------------------------------------------------------

std::array<LinearOperator, 3> su2_generators(double s, double hbar) {
  const int n = static_cast<int>(std::lround(2.0 * s)) + 1;
  SparseMatrix jp(n, n), jz(n, n);
  std::vector<Eigen::Triplet<Complex>> tp, tz;
  for (int k = 0; k < n; ++k) {
    const double m = s - k;
    tz.emplace_back(k, k, hbar * m);
    if (k > 0) {
      // J+|m⟩ = ħ√(s(s+1) − m(m+1)) |m+1⟩, and |m+1⟩ sits at index k−1.
      tp.emplace_back(k - 1, k, hbar * std::sqrt(s * (s + 1.0) - m * (m + 1.0)));
    }
  }
  jp.setFromTriplets(tp.begin(), tp.end());
  jz.setFromTriplets(tz.begin(), tz.end());
  const LinearOperator plus(jp, "spin"), minus = plus.adjoint();
  return {Complex(0.5) * (plus + minus), Complex(0.0, -0.5) * (plus - minus), LinearOperator(jz, "spin")};
}

SpinRep build_spin_rep(double s_left, double s_right, double hbar) {
  if (!is_half_integer(s_left) || !is_half_integer(s_right))
    throw PreconditionError("spins must be non-negative half-integers");
  if (!(hbar > 0.0)) throw PreconditionError("hbar must be positive");

  SpinRep rep;
  rep.s_left_ = s_left;
  rep.s_right_ = s_right;
  rep.hbar_ = hbar;

  const auto jl = su2_generators(s_left, hbar);
  const auto jr = su2_generators(s_right, hbar);
  const auto il = LinearOperator::identity(jl[0].dim(), "spin");
  const auto ir = LinearOperator::identity(jr[0].dim(), "spin");
  const std::string label = "spin(" + std::to_string(s_left) + "," + std::to_string(s_right) + ")";

  std::array<LinearOperator, 3> rot, boost;
  for (int k = 0; k < 3; ++k) {
    rep.plus_[k] = LinearOperator(kron(jl[k], ir).matrix(), label);
    rep.minus_[k] = LinearOperator(kron(il, jr[k]).matrix(), label);
    rot[k] = rep.plus_[k] + rep.minus_[k];
    boost[k] = Complex(0.0, -1.0) * (rep.plus_[k] - rep.minus_[k]);
  }
  // Ŝ_12 = Ĵ_3, Ŝ_13 = −Ĵ_2, Ŝ_23 = Ĵ_1, Ŝ_{0k} = B̂_k.
  rep.S_[lorentz_pair_index(0, 1)] = boost[0];
  rep.S_[lorentz_pair_index(0, 2)] = boost[1];
  rep.S_[lorentz_pair_index(0, 3)] = boost[2];
  rep.S_[lorentz_pair_index(1, 2)] = rot[2];
  rep.S_[lorentz_pair_index(1, 3)] = Complex(-1.0) * rot[1];
  rep.S_[lorentz_pair_index(2, 3)] = rot[0];
  return rep;
}

LinearOperator casimir_c1(const LorentzTensor& s) {
  auto out = LinearOperator::zero(s[0].dim(), s[0].basis_label());
  for (int k = 0; k < 6; ++k) {
    const auto [mu, nu] = lorentz_pair(k);
    out += Complex(eta(mu) * eta(nu)) * (s[k] * s[k]);
  }
  return out;
}

LinearOperator casimir_c2(const LorentzTensor& s) {
  auto out = LinearOperator::zero(s[0].dim(), s[0].basis_label());
  // Sum over ordered pairs μ<ν, ρ<σ picks each term of the full contraction 4 times.
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l) {
      const auto [mu, nu] = lorentz_pair(k);
      const auto [rho, sigma] = lorentz_pair(l);
      const int e = levi_civita_upper(mu, nu, rho, sigma);
      if (e == 0) continue;
      out += Complex(4.0 * e) * (s[k] * s[l]);
    }
  return Complex(0.0, -0.25) * out;
}

CasimirValues casimir_values(const LorentzTensor& s) {
  const auto c1 = casimir_c1(s);
  const auto c2 = casimir_c2(s);
  const auto id = LinearOperator::identity(s[0].dim(), s[0].basis_label());
  CasimirValues v;
  v.c1 = c1.matrix().coeff(0, 0);
  v.c2 = c2.matrix().coeff(0, 0);
  v.scalar_defect = std::max((c1 - v.c1 * id).norm_inf(), (c2 - v.c2 * id).norm_inf());
  return v;
}

CasimirValues casimir_spin(const SpinRep& rep) { return casimir_values(rep.tensor()); }

std::pair<double, double> expected_casimirs(double s_left, double s_right, double hbar) {
  const double l = s_left * (s_left + 1.0);
  const double r = s_right * (s_right + 1.0);
  return {2.0 * hbar * hbar * (l + r), 2.0 * hbar * hbar * (l - r)};
}

// ---------------------------------------------------------------------------

FullRep::FullRep(HeisenbergRep heisenberg, SpinRep spin)
    : heisenberg_(std::move(heisenberg)), spin_(std::move(spin)) {
  if (std::fabs(heisenberg_.hbar() - spin_.hbar()) > 0.0)
    throw PreconditionError("Heisenberg and spin factors use different hbar");
  const auto ih = heisenberg_.identity();
  const auto is = LinearOperator::identity(spin_.dim(), "spin");
  for (int mu = 0; mu < 4; ++mu) {
    x_[mu] = kron(heisenberg_.X(mu), is);
    p_[mu] = kron(heisenberg_.P(mu), is);
  }
  const auto orbital = heisenberg_.orbital();
  for (int k = 0; k < 6; ++k) {
    s_[k] = kron(ih, spin_.tensor()[k]);
    j_[k] = kron(orbital[k], is) + s_[k];
  }
  id_ = kron(ih, is);
}

BasisMask FullRep::interior(int depth) const {
  return kron(heisenberg_.interior(depth), BasisMask(static_cast<std::size_t>(spin_.dim()), 1));
}

LinearOperator momentum_square(const HeisenbergRep& rep) {
  auto out = LinearOperator::zero(rep.dim(), rep.X(0).basis_label());
  for (int nu = 0; nu < 4; ++nu) out += Complex(eta(nu)) * (rep.P(nu) * rep.P(nu));
  return out;
}

LinearOperator onshell_violation_commutator(const HeisenbergRep& rep, int mu) {
  if (mu < 0 || mu > 3) throw PreconditionError("Minkowski index out of range");
  return commutator(rep.X(mu), momentum_square(rep));
}

// ---------------------------------------------------------------------------

Realization realize(const HeisenbergRep& rep, double c) {
  Realization r;
  r.hbar = rep.hbar();
  r.c = c;
  r.interior = rep.interior(2);
  r.label = "heisenberg(cutoff=" + std::to_string(rep.cutoff()) + ")";
  const auto orbital = rep.orbital();
  for (int k = 0; k < 6; ++k) r.ops[k] = Complex(c) * orbital[k];
  for (int mu = 0; mu < 4; ++mu) {
    r.ops[GeneratorId::y(mu).index()] = Complex(rep.mass()) * rep.X(mu);
    r.ops[GeneratorId::e(mu).index()] = Complex(c) * rep.P(mu);
  }
  r.ops[GeneratorId::m().index()] = rep.M();
  return r;
}

Realization realize(const SpinRep& rep, double c) {
  Realization r;
  r.hbar = rep.hbar();
  r.c = c;
  r.interior = BasisMask(static_cast<std::size_t>(rep.dim()), 1);
  r.label = "spin(" + std::to_string(rep.s_left()) + "," + std::to_string(rep.s_right()) + ")";
  for (int k = 0; k < 6; ++k) r.ops[k] = Complex(c) * rep.tensor()[k];
  return r;
}

Realization realize(const FullRep& rep, double c) {
  Realization r;
  r.hbar = rep.hbar();
  r.c = c;
  r.interior = rep.interior(2);
  r.label = "full";
  for (int k = 0; k < 6; ++k) r.ops[k] = Complex(c) * rep.J()[k];
  for (int mu = 0; mu < 4; ++mu) {
    r.ops[GeneratorId::y(mu).index()] = Complex(rep.mass()) * rep.X(mu);
    r.ops[GeneratorId::e(mu).index()] = Complex(c) * rep.P(mu);
  }
  r.ops[GeneratorId::m().index()] = Complex(rep.mass()) * rep.identity();
  return r;
}

BracketReport check_brackets(const Realization& r) {
  BracketReport report;
  report.label = r.label;
  const auto gens = algebra::all_generators();
  const auto& table = algebra::StructureTable::h13();
  const Complex unit = kI * r.hbar * r.c;

  for (int ia = 0; ia < algebra::kGeneratorCount; ++ia)
    for (int ib = ia + 1; ib < algebra::kGeneratorCount; ++ib) {
      const auto& A = r.ops[ia];
      const auto& B = r.ops[ib];
      if (!A || !B) continue;
      const auto& expected = table.bracket(gens[ia], gens[ib]);
      bool realised = true;
      for (const auto& [g, coef] : expected.terms()) realised = realised && r.ops[g.index()].has_value();
      if (!realised) continue;

      auto defect = commutator(*A, *B);
      for (const auto& [g, coef] : expected.terms()) defect -= (unit * coef.to_double()) * *r.ops[g.index()];

      const double scale = A->norm_inf() * B->norm_inf();
      const double d = defect.norm_inf_on(r.interior);
      const double rel = scale > 0.0 ? d / scale : (d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      report.brackets.push_back({gens[ia], gens[ib], rel});
      report.max_relative_defect = std::max(report.max_relative_defect, rel);
    }
  return report;
}

std::pair<LinearOperator, LinearOperator> contracted_boost(const FullRep& full, int i, double c) {
  if (i < 1 || i > 3) throw PreconditionError("boost index must be spatial");
  if (!(c > 0.0)) throw PreconditionError("contraction requires c > 0");
  const auto& x0 = full.X(0);
  const auto& p0 = full.P(0);
  const auto x0c = Complex(c) * x0;        // X̂_0 = −cT̂ with T̂ = −X̂_0(c=1)
  const auto p0c = Complex(1.0 / c) * p0;  // P̂_0 = −Ĥ/c with Ĥ = −P̂_0(c=1)
  const auto J_i0 = full.X(i) * p0c - full.P(i) * x0c + full.S(i, 0);
  auto K = Complex(1.0 / c) * J_i0;
  const auto T = Complex(-1.0) * x0;
  return {std::move(K), full.P(i) * T};
}

}  // namespace hr13::reps
