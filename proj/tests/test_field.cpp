#include <doctest.h>

#include <random>

#include "hr13/errors.hpp"
#include "hr13/field.hpp"
#include "oracles.hpp"

using namespace hr13;
using namespace hr13::field;

namespace {

std::vector<std::array<double, 3>> momenta(const MomentumLattice& lat) {
  std::vector<std::array<double, 3>> out;
  for (int i = 0; i < lat.size(); ++i) out.push_back(lat.mode(i).p);
  return out;
}

}  // namespace

TEST_CASE("nearest lattice ordering, zero mode and volume") {
  const auto lat = MomentumLattice::nearest(27, 0.5, 1.0, 2.0, 1.5);
  REQUIRE(lat.size() == 27);
  CHECK(lat.mode(0).p == std::array<double, 3>{0, 0, 0});
  CHECK(lat.energy(0) == doctest::Approx(2.0 * 2.0));
  CHECK(lat.volume() == doctest::Approx(std::pow(2 * std::numbers::pi * 1.5 / 0.5, 3)));
  double prev = 0.0;
  for (int i = 0; i < lat.size(); ++i) {
    const auto& p = lat.mode(i).p;
    const double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    CHECK(n2 >= prev);
    prev = n2;
  }
  const auto massless = MomentumLattice::nearest(6, 1.0, 0.0);
  for (int i = 0; i < massless.size(); ++i) CHECK(massless.energy(i) > 0.0);

  const auto box = MomentumLattice::box(3, 1.5, 0.0);
  CHECK(box.size() == 216);
  for (int i = 0; i < box.size(); ++i) CHECK(box.energy(i) > 0.0);
}

TEST_CASE("ladder action on small states") {
  const auto vac = FockState::vacuum(3, 4);
  CHECK(apply_ladder(vac, 1, Ladder::annihilate).is_zero());
  const auto comm = apply_ladder(apply_ladder(vac, 1, Ladder::create), 1, Ladder::annihilate) -
                    apply_ladder(apply_ladder(vac, 1, Ladder::annihilate), 1, Ladder::create);
  CHECK((comm - vac).max_abs() <= 1e-15);
  const auto two = apply_ladder(apply_ladder(vac, 2, Ladder::create), 2, Ladder::create);
  CHECK(two.amplitude({2, 2}).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(count({0, 2, 2}, 2) == 2);
  const auto full = FockState::basis(3, 4, {0, 0, 1, 2});
  CHECK_THROWS_AS(apply_ladder(full, 0, Ladder::create), TruncationOverflow);
  CHECK_THROWS_AS(multiparticle_state(MomentumLattice::nearest(3, 1.0, 1.0), {0, 0, 0, 0, 0}, 4), TruncationOverflow);
}

TEST_CASE("multi-particle states carry the sqrt(2E) factors") {
  const auto lat = MomentumLattice::nearest(7, 1.0, 1.0);
  const auto one = multiparticle_state(lat, {0}, 4);
  CHECK(one.amplitude({0}).real() == doctest::Approx(std::sqrt(2.0)));
  const auto rep = multiparticle_state(lat, {3, 3}, 4);
  CHECK(rep.amplitude({3, 3}).real() == doctest::Approx(2.0 * lat.energy(3) * std::sqrt(2.0)));
  CHECK((multiparticle_state(lat, {1, 5, 2}, 4) - multiparticle_state(lat, {2, 1, 5}, 4)).max_abs() <= 1e-14);
}

TEST_CASE("invariant normalization: 2 E_p V delta_pq") {
  const auto lat = MomentumLattice::nearest(7, 1.0, 1.0);
  const auto p0 = multiparticle_state(lat, {0}, 4);
  const auto ip = invariant_inner_product(lat, p0, p0);
  CHECK(ip.real() == doctest::Approx(2.0 * std::pow(2 * std::numbers::pi, 3)));
  CHECK(std::abs(invariant_inner_product(lat, p0, multiparticle_state(lat, {4}, 4))) == 0.0);
  CHECK_THROWS_AS(invariant_inner_product(lat, FockState::vacuum(7, 4), p0), SectorMismatch);
}

TEST_CASE("field operator on the vacuum and the two-point function") {
  const auto lat = MomentumLattice::nearest(19, 0.7, 1.0);
  const Vec4 x{0.3, 0.1, -0.4, 0.8}, y{-0.2, 0.5, 0.0, 0.1};
  const auto phi = field_operator_apply(lat, FockState::vacuum(19, 4), x);
  CHECK(std::abs(phi.amplitude({})) == 0.0);
  for (int i = 0; i < lat.size(); ++i) {
    const auto& m = lat.mode(i);
    const oracle::V4 P{m.energy, m.p[0], m.p[1], m.p[2]};
    const Complex want = std::polar(1.0, oracle::minkowski_dot(P, {x[0], x[1], x[2], x[3]})) /
                         std::sqrt(2 * m.energy * lat.volume());
    CHECK(std::abs(phi.amplitude({i}) - want) <= 1e-15);
  }
  const auto g = vacuum_two_point(lat, x, y);
  const auto want = oracle::two_point_sum(momenta(lat), 1.0, 1.0, 1.0, 0.7, {x[0], x[1], x[2], x[3]},
                                          {y[0], y[1], y[2], y[3]});
  CHECK(std::abs(g - want) <= 1e-14 * std::abs(want));
  double same = 0.0;
  for (int i = 0; i < lat.size(); ++i) same += 1.0 / (2 * lat.energy(i) * lat.volume());
  CHECK(vacuum_two_point(lat, x, x).real() == doctest::Approx(same).epsilon(1e-13));
}

TEST_CASE("property: number operator and phase rotations") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n;
  const auto basis = fock_basis(5, 3);
  CHECK(basis.size() == 56u);
  FockState s(5, 3);
  for (const auto& occ : basis) s.add(occ, {n(rng), n(rng)});
  std::vector<double> theta{0.1, 1.2, -0.7, 2.0, 0.4};
  const auto a = number_operator_apply(phase_rotation(s, theta));
  const auto b = phase_rotation(number_operator_apply(s), theta);
  CHECK((a - b).max_abs() <= 1e-14);
  for (const auto& occ : basis) {
    const auto e = FockState::basis(5, 3, occ);
    CHECK((number_operator_apply(e) - static_cast<double>(occ.size()) * e).max_abs() == 0.0);
  }
}

TEST_CASE("box-lattice two-point function converges under refinement") {
  const Vec4 x{0, 0.5, 0, 0}, y{0, -0.5, 0, 0};
  std::vector<Complex> g;
  for (int K : {4, 8, 16}) g.push_back(vacuum_two_point(MomentumLattice::box(K, 4.0, 1.0), x, y));
  const double d1 = std::abs(g[1] - g[0]), d2 = std::abs(g[2] - g[1]);
  CHECK(d2 < d1);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.1));
}
