#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hr13/errors.hpp"
#include "hr13/field.hpp"
#include "hr13/runner/scenarios.hpp"

namespace hr13::runner {

namespace {

using namespace hr13::field;

Vec4 vec4(const std::vector<double>& v) { return {v[0], v[1], v[2], v[3]}; }

/// Random amplitudes of modulus in [½, 1] on every basis state with total <= max_total.
/// Each commutator checked below maps distinct basis states to distinct
/// basis states, so vanishing on such a state is vanishing on every state.
FockState generic_state(const std::vector<Occupation>& basis, int n_modes, int n_max, int max_total,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.0), arg(0.0, 2.0 * std::numbers::pi);
  FockState s(n_modes, n_max);
  for (const auto& occ : basis)
    if (static_cast<int>(occ.size()) <= max_total) s.add(occ, std::polar(mag(rng), arg(rng)));
  return s;
}

FockState ladder(const FockState& s, int mode, Ladder kind) { return apply_ladder(s, mode, kind); }

void run_check(ScenarioContext& ctx) {
  const int n_modes = static_cast<int>(ctx.integer("modes"));
  const int n_max = static_cast<int>(ctx.integer("n_max"));
  if (n_max < 2) throw PreconditionError("field check needs n_max >= 2");
  const double hbar = ctx.num("hbar"), c = ctx.num("c"), mE = ctx.num("m_E");
  const auto lattice = MomentumLattice::nearest(n_modes, ctx.num("dp"), mE, c, hbar);
  const auto basis = fock_basis(n_modes, n_max);
  std::mt19937_64 rng(ctx.seed());

  // Ladder algebra, each commutator on a generic interior state.
  const FockState v1 = generic_state(basis, n_modes, n_max, n_max - 1, rng);
  const FockState v2 = generic_state(basis, n_modes, n_max, n_max - 2, rng);
  double aa_dag = 0.0, aa = 0.0, adag_adag = 0.0;
  for (int p = 0; p < n_modes; ++p) {
    const FockState ap_v1 = ladder(v1, p, Ladder::annihilate);
    const FockState adp_v2 = ladder(v2, p, Ladder::create);
    for (int q = 0; q < n_modes; ++q) {
      FockState d = ladder(ladder(v1, q, Ladder::create), p, Ladder::annihilate) - ladder(ap_v1, q, Ladder::create);
      if (p == q) d -= v1;
      aa_dag = std::fmax(aa_dag, d.max_abs());
      if (q > p) {
        aa = std::fmax(aa, (ladder(ap_v1, q, Ladder::annihilate) -
                            ladder(ladder(v1, q, Ladder::annihilate), p, Ladder::annihilate))
                               .max_abs());
        adag_adag = std::fmax(adag_adag, (ladder(adp_v2, q, Ladder::create) -
                                          ladder(ladder(v2, q, Ladder::create), p, Ladder::create))
                                             .max_abs());
      }
    }
  }
  ctx.check_le("field.ladder", "[a_p,a_q^dag]-delta", aa_dag, 1e-12);
  ctx.check_le("field.ladder", "[a_p,a_q]", aa, 0.0);
  ctx.check_le("field.ladder", "[a_p^dag,a_q^dag]", adag_adag, 0.0);
  ctx.check_true("field.ladder", "annihilate-vacuum-is-zero",
                 ladder(FockState::vacuum(n_modes, n_max), 0, Ladder::annihilate).is_zero());
  bool overflow = false;
  try {
    ladder(FockState::basis(n_modes, n_max, Occupation(static_cast<std::size_t>(n_max), 0)), 0, Ladder::create);
  } catch (const TruncationOverflow&) {
    overflow = true;
  }
  ctx.check_true("field.ladder", "creation-past-truncation-reported", overflow);

  // Number operator: spectrum and phase-rotation symmetry.
  std::vector<char> seen(static_cast<std::size_t>(n_max) + 1, 0);
  double number_dev = 0.0;
  for (const auto& occ : basis) {
    const auto s = FockState::basis(n_modes, n_max, occ);
    const FockState d = number_operator_apply(s) - static_cast<double>(occ.size()) * s;
    number_dev = std::fmax(number_dev, d.max_abs());
    seen.at(occ.size()) = 1;
  }
  ctx.check_le("field.number", "eigenvalue-equals-total-occupation", number_dev, 1e-12);
  ctx.check_true("field.number", "spectrum-is-0..n_max", std::all_of(seen.begin(), seen.end(), [](char b) { return b; }));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> theta(static_cast<std::size_t>(n_modes));
  for (double& t : theta) t = angle(rng);
  const FockState full = generic_state(basis, n_modes, n_max, n_max, rng);
  ctx.check_le("field.number", "commutes-with-phase-rotation",
               (number_operator_apply(phase_rotation(full, theta)) - phase_rotation(number_operator_apply(full), theta))
                   .max_abs(),
               1e-12);

  // Invariant normalization of one-particle states.
  double norm_dev = 0.0, offdiag = 0.0;
  std::vector<FockState> one;
  for (int p = 0; p < n_modes; ++p) one.push_back(multiparticle_state(lattice, {p}, n_max));
  for (int p = 0; p < n_modes; ++p)
    for (int q = 0; q < n_modes; ++q) {
      const Complex v = invariant_inner_product(lattice, one[p], one[q]);
      if (p == q) {
        const double expected = 2.0 * lattice.energy(p) * lattice.volume();
        norm_dev = std::fmax(norm_dev, std::abs(v - expected) / expected);
      } else {
        offdiag = std::fmax(offdiag, std::abs(v));
      }
    }
  ctx.check_le("field.normalization", "<p|p>-equals-2E_pV", norm_dev, 1e-12);
  ctx.check_le("field.normalization", "<p|q>-vanishes", offdiag, 0.0);
  {
    std::normal_distribution<double> gauss;
    FockState a(n_modes, n_max), b(n_modes, n_max);
    for (int p = 0; p < n_modes; ++p) {
      a += Complex(gauss(rng), gauss(rng)) * one[p];
      b += Complex(gauss(rng), gauss(rng)) * one[p];
    }
    const Complex ab = invariant_inner_product(lattice, a, b), ba = invariant_inner_product(lattice, b, a);
    ctx.check_le("field.normalization", "conjugate-symmetry", std::abs(ab - std::conj(ba)), 1e-12 * std::abs(ab));
    bool mismatch = false;
    try {
      invariant_inner_product(lattice, multiparticle_state(lattice, {0, 1}, n_max), one[0]);
    } catch (const SectorMismatch&) {
      mismatch = true;
    }
    ctx.check_true("field.normalization", "sector-mismatch-reported", mismatch);
  }

  // Exchange symmetry: every permutation of every sampled mode list, n <= min(4, n_max).
  double exchange = 0.0;
  long lists = 0;
  std::uniform_int_distribution<int> pick(0, n_modes - 1);
  const long per_n = ctx.integer("exchange_lists");
  for (int n = 1; n <= std::min(4, n_max); ++n)
    for (long k = 0; k < per_n; ++k) {
      std::vector<int> modes(static_cast<std::size_t>(n));
      for (int& m : modes) m = pick(rng);
      if (k == 0) std::fill(modes.begin(), modes.end(), modes.front());
      const FockState ref = multiparticle_state(lattice, modes, n_max);
      std::sort(modes.begin(), modes.end());
      do {
        exchange = std::fmax(exchange, (multiparticle_state(lattice, modes, n_max) - ref).max_abs() / ref.max_abs());
      } while (std::next_permutation(modes.begin(), modes.end()));
      ++lists;
    }
  // Permutations reorder the √(2E) products, so equality holds to round-off.
  ctx.check_le("field.exchange", "permutation-invariance", exchange, 1e-14);
  ctx.check_ge("field.exchange", "mode-lists-tested", static_cast<double>(lists), 1.0);

  // φ(x) self-adjoint on the interior: ⟨s|φ|t⟩ = conj⟨t|φ|s⟩ for Σn <= n_max − 1.
  const Vec4 x = vec4(ctx.vec("x"));
  std::map<Occupation, std::size_t> interior;
  for (const auto& occ : basis)
    if (static_cast<int>(occ.size()) <= n_max - 1) interior.emplace(occ, interior.size());
  std::map<std::pair<std::size_t, std::size_t>, Complex> elements;
  for (const auto& [occ, col] : interior) {
    const auto image = field_operator_apply(lattice, FockState::basis(n_modes, n_max, occ), x);
    for (const auto& [row_occ, amp] : image.amplitudes()) {
      const auto it = interior.find(row_occ);
      if (it != interior.end()) elements[{it->second, col}] = amp;
    }
  }
  double herm = 0.0;
  for (const auto& [rc, amp] : elements) {
    const auto it = elements.find({rc.second, rc.first});
    const Complex mirror = it == elements.end() ? Complex{} : it->second;
    herm = std::fmax(herm, std::abs(amp - std::conj(mirror)));
  }
  ctx.check_le("field.hermiticity", "phi-equals-adjoint-on-interior", herm, 1e-14);
  const auto phi0 = field_operator_apply(lattice, FockState::vacuum(n_modes, n_max), x);
  ctx.check_le("field.hermiticity", "<0|phi|0>", std::abs(phi0.amplitude({})), 0.0);
}

void run_correlator(ScenarioContext& ctx) {
  const Vec4 x = vec4(ctx.vec("x")), y = vec4(ctx.vec("y"));
  const double hbar = ctx.num("hbar"), c = ctx.num("c"), mE = ctx.num("m_E"), cutoff = ctx.num("cutoff");
  const auto Ks = ctx.vec("K");
  if (Ks.size() < 3) throw PreconditionError("refinement needs at least three lattice sizes");
  Vec4 d = x - y;
  if (!(dot(d, d) > 0.0)) throw PreconditionError("refinement regression needs spacelike x - y");

  CsvTable table("two-point", 1, {"K", "dp", "modes", "re", "im", "cauchy_diff"});
  std::vector<Complex> values;
  double max_imag = 0.0;
  for (double kd : Ks) {
    const int K = static_cast<int>(std::lround(kd));
    const auto lattice = MomentumLattice::box(K, cutoff, mE, c, hbar);
    const Complex g = vacuum_two_point(lattice, x, y);
    const double diff = values.empty() ? std::nan("") : std::abs(g - values.back());
    values.push_back(g);
    max_imag = std::fmax(max_imag, std::fabs(g.imag()) / std::abs(g));
    table.row({static_cast<double>(K), lattice.spacing(), static_cast<double>(lattice.size()), g.real(), g.imag(),
               diff});
  }
  bool monotone = true;
  for (std::size_t i = 2; i < values.size(); ++i)
    monotone = monotone && std::abs(values[i] - values[i - 1]) < std::abs(values[i - 1] - values[i - 2]);
  ctx.check_true("field.refinement", "monotone-cauchy-differences", monotone);
  const std::size_t n = values.size();
  ctx.check_ge("field.refinement", "last-contraction-ratio",
               std::abs(values[n - 2] - values[n - 3]) / std::abs(values[n - 1] - values[n - 2]), 2.0);
  if (x[0] == y[0]) ctx.check_le("field.refinement", "equal-time-imaginary-part", max_imag, 1e-12);
  ctx.artifact("two_point.csv", table.str());
}

}  // namespace

std::vector<ScenarioSpec> field_scenarios() {
  std::vector<ScenarioSpec> v;
  v.push_back({"field",
               "check",
               {"field.ladder", "field.number", "field.normalization", "field.exchange", "field.hermiticity"},
               true,
               Json{{"modes", 27},
                    {"n_max", 4},
                    {"dp", 1.0},
                    {"m_E", 1.0},
                    {"c", 1.0},
                    {"hbar", 1.0},
                    {"exchange_lists", 20},
                    {"x", {0.3, -0.2, 0.5, 0.1}}},
               {},
               run_check});
  v.push_back({"field",
               "correlator",
               {"field.refinement"},
               false,
               Json{{"x", {0.0, 0.5, 0.0, 0.0}},
                    {"y", {0.0, -0.5, 0.0, 0.0}},
                    {"m_E", 1.0},
                    {"c", 1.0},
                    {"hbar", 1.0},
                    {"cutoff", 4.0},
                    {"K", {4, 8, 16}}},
               {"K"},
               run_correlator});
  return v;
}

}  // namespace hr13::runner
