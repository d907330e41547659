#include <doctest.h>

#include <random>
#include <vector>

#include "hr13/algebra.hpp"
#include "hr13/contraction.hpp"

using namespace hr13::algebra;
using hr13::Rational;

namespace {

Combination single(GeneratorId g, int num = 1) { return Combination(g, Rational(num)); }

}  // namespace

TEST_CASE("rational arithmetic stays normalized") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
}

TEST_CASE("generator indexing round-trips") {
  for (int k = 0; k < kGeneratorCount; ++k) CHECK(GeneratorId::from_index(k).index() == k);
  for (int k = 0; k < 6; ++k) {
    const auto [mu, nu] = lorentz_pair(k);
    CHECK(lorentz_pair_index(mu, nu) == k);
  }
  const auto s = jprime_signed(2, 0);
  REQUIRE(s);
  CHECK(s->sign == -1);
  CHECK(s->id == GeneratorId::jprime(0, 2));
  CHECK_FALSE(jprime_signed(1, 1));
}

TEST_CASE("full sweep: antisymmetry, Jacobi over 455 triples, central M") {
  const AlgebraCheck chk = check_algebra();
  CHECK(chk.antisymmetry);
  CHECK(chk.central);
  CHECK(chk.poincare_closed);
  CHECK(chk.jacobi_triples == 455);
  CHECK(chk.failures.empty());
}

TEST_CASE("selected brackets against hand-expanded values") {
  // [Y_μ, E_ν] = η_{μν} M
  CHECK(bracket(GeneratorId::y(0), GeneratorId::e(0)) == single(GeneratorId::m(), -1));
  CHECK(bracket(GeneratorId::y(2), GeneratorId::e(2)) == single(GeneratorId::m()));
  CHECK(bracket(GeneratorId::y(1), GeneratorId::e(2)).empty());
  // [J'_{01}, Y_1] = η_{01}Y_1 − η_{11}Y_0 = −Y_0
  CHECK(bracket(GeneratorId::jprime(0, 1), GeneratorId::y(1)) == single(GeneratorId::y(0), -1));
  // [J'_{01}, E_0] = η_{00}E_1 = −E_1
  CHECK(bracket(GeneratorId::jprime(0, 1), GeneratorId::e(0)) == single(GeneratorId::e(1), -1));
  // [J'_{12}, J'_{23}] = −η_{22}J'_{13}
  CHECK(bracket(GeneratorId::jprime(1, 2), GeneratorId::jprime(2, 3)) == single(GeneratorId::jprime(1, 3), -1));
  // [J'_{01}, J'_{02}] = η_{00}J'_{12}
  CHECK(bracket(GeneratorId::jprime(0, 1), GeneratorId::jprime(0, 2)) == single(GeneratorId::jprime(1, 2), -1));
  // abelian parts
  CHECK(bracket(GeneratorId::y(0), GeneratorId::y(3)).empty());
  CHECK(bracket(GeneratorId::e(1), GeneratorId::e(2)).empty());
}

TEST_CASE("property: bilinear antisymmetry and Jacobi on random combinations") {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<int> coef(-3, 3), gen(0, kGeneratorCount - 1);
  const auto& t = StructureTable::h13();
  auto random_combo = [&] {
    Combination c;
    for (int k = 0; k < 4; ++k) c.add(GeneratorId::from_index(gen(rng)), Rational(coef(rng), 1 + (k % 2)));
    return c;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_combo(), b = random_combo(), c = random_combo();
    CHECK(t.bracket(a, b) == -t.bracket(b, a));
    const Combination jac = t.bracket(t.bracket(a, b), c) + t.bracket(t.bracket(b, c), a) + t.bracket(t.bracket(c, a), b);
    CHECK(jac.empty());
  }
}

TEST_CASE("contraction: exact products and the c -> infinity targets") {
  const auto U = ContractedGenerator::time_translation(), H = ContractedGenerator::hamiltonian(),
             M = ContractedGenerator::mass();
  for (double c : {10.0, 1e3, 1e6}) {
    const auto uh = contracted_bracket(ContractedBasis{c}, U, H);
    REQUIRE(uh.size() == 1);
    CHECK(uh.at(M) == -1.0);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        const auto ky = contracted_bracket(ContractedBasis{c}, ContractedGenerator::boost(i),
                                           ContractedGenerator::translation(j));
        if (i == j) {
          REQUIRE(ky.size() == 1);
          CHECK(ky.at(U) == -1.0);
        } else {
          CHECK(ky.empty());
        }
      }
  }
  // [K_i, H] = −P_i at every c.
  const auto kh = contracted_bracket(ContractedBasis{100.0}, ContractedGenerator::boost(1), H);
  CHECK(kh.at(ContractedGenerator::momentum(1)) == -1.0);
  const auto target = contraction_target(ContractedGenerator::translation(2), ContractedGenerator::momentum(2));
  CHECK(target.at(M) == Rational(1));
}

TEST_CASE("contraction: deviations decay at least like 1/c") {
  const std::vector<double> cs{10, 1e2, 1e3, 1e4, 1e5, 1e6};
  const auto rep = contraction_limit_check(cs);
  CHECK(rep.monotone);
  CHECK(rep.min_fitted_power >= 1.0);
  CHECK(rep.pass());
  int inexact = 0;
  for (const auto& b : rep.brackets) inexact += b.exact ? 0 : 1;
  CHECK(inexact > 0);
}

TEST_CASE("rescaling and its inverse compose to the identity") {
  for (const auto& G : all_contracted_generators()) {
    const auto r = rescaling(G);
    const auto inv = inverse_rescaling(r.original);
    CHECK(inv.contracted == G);
    CHECK(inv.sign * r.sign == 1);
    CHECK(inv.c_power + r.c_power == 0);
  }
}
