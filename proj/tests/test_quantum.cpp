#include <doctest.h>

#include <random>

#include "hr13/errors.hpp"
#include "hr13/quantum.hpp"
#include "oracles.hpp"

using namespace hr13;
using namespace hr13::quantum;

namespace {

double rel(const GridWavefunction& a, const GridWavefunction& b) { return (a - b).norm() / b.norm(); }

Grid small_grid(int n = 64, double L = 40.0) { return Grid::make(1, {n, n}, {L, L}); }

Vec4 lattice_momentum(const Grid& g, int n0, int n1, double hbar = 1.0) {
  return {hbar * 2 * std::numbers::pi * n0 / g.lengths[0], hbar * 2 * std::numbers::pi * n1 / g.lengths[1], 0, 0};
}

}  // namespace

TEST_CASE("grid construction guards") {
  CHECK_THROWS_AS(Grid::make(2, {8, 8, 8}, {1, 1, 1}), PreconditionError);
  CHECK_THROWS_AS(Grid::make(1, {7, 8}, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(Grid::make(1, {2, 8}, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(Grid::make(1, {8, 8}, {1, -1}), PreconditionError);
  const auto g = Grid::make(3, {4, 4, 4, 6}, {1, 2, 3, 4});
  CHECK(g.size() == 4u * 4u * 4u * 6u);
  CHECK(g.coordinate(0, 0) == doctest::Approx(-0.5));
}

TEST_CASE("FFT round trip is the identity") {
  const auto g = small_grid(16, 5.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<Complex> v(g.size());
  for (auto& z : v) z = {n(rng), n(rng)};
  const auto w = fft_backward(g, fft_forward(g, v));
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) d = std::fmax(d, std::abs(v[i] - w[i]));
  CHECK(d <= 1e-13);
}

TEST_CASE("on-shell plane wave picks up the stationary phase") {
  const auto g = small_grid();
  const Vec4 p = lattice_momentum(g, -5, 3);
  const double mE = std::sqrt(p[0] * p[0] - p[1] * p[1]);
  const auto psi = plane_wave(g, p);
  EvolutionConfig cfg;
  cfg.m = 0.8;
  cfg.ds = 0.05;
  cfg.n_steps = 200;
  const auto out = evolve_s(psi, cfg);
  const auto expected = scaled(psi, oracle::onshell_phase(mE, 1.0, 0.8, 1.0, 10.0));
  CHECK(rel(out.final_state, expected) <= 1e-10);
}

TEST_CASE("Gaussian packet: unitarity and Ehrenfest motion") {
  const auto g = Grid::make(1, {128, 128}, {40.0, 40.0});
  const Vec4 p{-std::sqrt(1.25), 0.5, 0, 0};
  const auto psi = gaussian_packet(g, {1.0, -2.0, 0, 0}, p, {1.5, 2.0, 0, 0});
  EvolutionConfig cfg;
  cfg.m = 2.0;
  cfg.ds = 1e-3;
  cfg.n_steps = 2000;
  cfg.record_every = 100;
  const auto out = evolve_s(psi, cfg);
  const auto& m0 = out.history.front().moments;
  CHECK(m0.p[0] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-10));
  CHECK(m0.p[1] == doctest::Approx(0.5).epsilon(1e-10));
  for (const auto& r : out.history) {
    CHECK(std::fabs(r.moments.norm - 1.0) <= 2e-10);
    for (int mu = 0; mu < 2; ++mu) CHECK(std::fabs(r.moments.x[mu] - (m0.x[mu] + m0.p[mu] * r.s / 2.0)) <= 1e-8);
  }
}

TEST_CASE("Strang splitting with a bounded potential stays unitary") {
  const auto g = small_grid();
  const auto psi = gaussian_packet(g, {0, 0, 0, 0}, {-1.0, 0.3, 0, 0}, {2.0, 2.0, 0, 0});
  EvolutionConfig cfg;
  cfg.m = 1.0;
  cfg.ds = 1e-2;
  cfg.n_steps = 1000;
  cfg.record_every = 1000;
  cfg.V = [](const Vec4& x) { return 0.2 * std::cos(x[1]) + 0.1 * x[0] * x[0] / 400.0; };
  const auto out = evolve_s(psi, cfg);
  CHECK(std::fabs(out.final_state.norm() - psi.norm()) <= 1e-10);

  cfg.V = [](const Vec4& x) { return x[1] > 0 ? std::numeric_limits<double>::infinity() : 0.0; };
  CHECK_THROWS_AS(evolve_s(psi, cfg), PreconditionError);
}

TEST_CASE("resolution guard rejects under-sampled packets") {
  const auto g = Grid::make(1, {16, 16}, {40.0, 40.0});
  const auto psi = gaussian_packet(g, {0, 0, 0, 0}, {-2.0, 0.0, 0, 0}, {3.0, 3.0, 0, 0});
  CHECK_THROWS_AS(check_resolution(psi), PreconditionError);
}

TEST_CASE("Klein-Gordon residual: on shell, off shell, massless") {
  const auto g = small_grid();
  const Vec4 p = lattice_momentum(g, 5, 3);
  const double mE = std::sqrt(p[0] * p[0] - p[1] * p[1]);
  const auto psi = plane_wave(g, p);
  CHECK(klein_gordon_residual(psi, mE) <= 1e-8);
  const double m_off = mE / 1.1;
  CHECK(klein_gordon_residual(psi, m_off) == doctest::Approx(0.21 * m_off * m_off).epsilon(1e-10));
  CHECK(klein_gordon_residual(plane_wave(g, lattice_momentum(g, 3, 3)), 0.0) <= 1e-8);
}

TEST_CASE("property: [X, PP] = 2i hbar P on localized band-limited states") {
  const auto g = Grid::make(1, {128, 128}, {40.0, 40.0});
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    GridWavefunction psi{g, std::vector<Complex>(g.size()), 1.0, 1.0};
    for (int k = 0; k < 3; ++k)
      psi = psi + scaled(gaussian_packet(g, {5 * u(rng), 5 * u(rng), 0, 0}, {u(rng), u(rng), 0, 0}, {1.5, 1.5, 0, 0}),
                         Complex(u(rng), u(rng)));
    for (int mu = 0; mu < 2; ++mu) {
      const auto lhs = apply_X(apply_PP(psi), mu) - apply_PP(apply_X(psi, mu));
      CHECK(rel(lhs, scaled(apply_P(psi, mu), Complex(0, 2))) <= 1e-8);
    }
  }
}

TEST_CASE("offshell spread") {
  const auto g = Grid::make(1, {4096, 32}, {512.0, 48.0});
  SUBCASE("wide packets fail the sharpness precondition") {
    const auto wide = gaussian_packet(g, {0, 0, 0, 0}, {-5.0, 0, 0, 0}, {2.0, 3.0, 0, 0});
    CHECK_THROWS_AS(offshell_spread(wide, 0), PreconditionError);
  }
  SUBCASE("symmetric packet: no first-order shift, variance grows") {
    const auto psi = gaussian_packet(g, {0, 0, 0, 0}, {-5.0, 0, 0, 0}, {25.0, 3.0, 0, 0});
    for (int mu = 0; mu < 2; ++mu) {
      const auto r = offshell_spread(psi, mu);
      CHECK(r.relative_spread_before <= 1e-2);
      CHECK(r.after_variance > r.before_variance);
      CHECK(std::fabs(r.first_order_shift) <= 1e-8 * std::fabs(r.before_mean));
      CHECK(r.after_mean == doctest::Approx(r.predicted_after_mean).epsilon(1e-8));
    }
  }
  SUBCASE("the after-state statistics do not depend on grid density") {
    const auto g2 = Grid::make(1, {8192, 64}, {512.0, 48.0});
    auto a = gaussian_packet(g, {40, 0, 0, 0}, {-5.0, 0, 0, 0}, {25.0, 3.0, 0, 0});
    auto b = gaussian_packet(g2, {40, 0, 0, 0}, {-5.0, 0, 0, 0}, {25.0, 3.0, 0, 0});
    const auto ra = offshell_spread(a, 0), rb = offshell_spread(b, 0);
    CHECK(ra.after_mean == doctest::Approx(rb.after_mean).epsilon(1e-9));
    CHECK(ra.after_variance == doctest::Approx(rb.after_variance).epsilon(1e-6));
  }
  SUBCASE("momentum eigenstate leaves the shell") {
    const auto psi = plane_wave(g, {-2 * std::numbers::pi * 8 / 512.0, 0, 0, 0});
    const auto r = offshell_spread(psi, 1);
    CHECK(r.before_variance <= 1e-20);
    CHECK(r.after_variance > 1e-3);
  }
}
