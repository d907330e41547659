#include <doctest.h>

#include "hr13/composite.hpp"
#include "hr13/errors.hpp"
#include "hr13/minkowski.hpp"
#include "hr13/reps.hpp"
#include "oracles.hpp"

using namespace hr13;
using namespace hr13::reps;

namespace {

double defect_on(const LinearOperator& a, const LinearOperator& b, const BasisMask& mask) {
  return (a - b).norm_inf_on(mask);
}

const Complex I{0.0, 1.0};

}  // namespace

TEST_CASE("su(2) matrices: commutators and J^2 = s(s+1)hbar^2") {
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const double hbar = 0.7;
    const auto J = su2_generators(s, hbar);
    const auto id = LinearOperator::identity(J[0].dim(), "spin");
    CHECK(J[0].dim() == static_cast<Eigen::Index>(2 * s + 1));
    CHECK((commutator(J[0], J[1]) - I * hbar * J[2]).norm_inf() <= 1e-14);
    CHECK((commutator(J[1], J[2]) - I * hbar * J[0]).norm_inf() <= 1e-14);
    const auto J2 = J[0] * J[0] + J[1] * J[1] + J[2] * J[2];
    CHECK((J2 - Complex(s * (s + 1) * hbar * hbar) * id).norm_inf() <= 1e-13);
  }
}

TEST_CASE("Casimir table for every (s_L, s_R) with 2s <= 2") {
  for (double hbar : {1.0, 0.5}) {
    for (double l : {0.0, 0.5, 1.0})
      for (double r : {0.0, 0.5, 1.0}) {
        const auto v = casimir_spin(build_spin_rep(l, r, hbar));
        const auto want = oracle::lorentz_casimirs(l, r, hbar);
        CAPTURE(l);
        CAPTURE(r);
        CHECK(std::abs(v.c1 - want[0]) <= 1e-12);
        CHECK(std::abs(v.c2 - want[1]) <= 1e-12);
        CHECK(v.scalar_defect <= 1e-12);
        const auto e = expected_casimirs(l, r, hbar);
        CHECK(e.first == doctest::Approx(want[0]).epsilon(1e-15));
        CHECK(e.second == doctest::Approx(want[1]).epsilon(1e-15));
      }
  }
}

TEST_CASE("(1/2, 0) gives 3hbar^2/2 for both Casimirs") {
  const auto v = casimir_spin(build_spin_rep(0.5, 0.0, 1.0));
  CHECK(std::abs(v.c1 - 1.5) <= 1e-14);
  CHECK(std::abs(v.c2 - 1.5) <= 1e-14);
  const auto w = casimir_spin(build_spin_rep(0.0, 0.5, 1.0));
  CHECK(std::abs(w.c2 + 1.5) <= 1e-14);
}

TEST_CASE("spin representation rejects non half-integer labels") {
  CHECK_THROWS_AS(build_spin_rep(0.3, 0.0), PreconditionError);
  CHECK_THROWS_AS(build_spin_rep(-0.5, 0.0), PreconditionError);
  CHECK_THROWS_AS(build_heisenberg_rep(1.0, 3), PreconditionError);
}

TEST_CASE("Heisenberg realization: canonical pairs and hermiticity") {
  const double hbar = 1.3;
  const auto rep = build_heisenberg_rep(2.0, 6, hbar);
  const auto inner = rep.interior(2);
  for (int mu = 0; mu < 4; ++mu) {
    CHECK((rep.X(mu) - rep.X(mu).adjoint()).norm_inf() == 0.0);
    CHECK((rep.P(mu) - rep.P(mu).adjoint()).norm_inf() <= 1e-15);
    for (int nu = 0; nu < 4; ++nu) {
      const auto want = Complex(0.0, hbar * eta(mu, nu)) * rep.identity();
      CHECK(defect_on(commutator(rep.X(mu), rep.P(nu)), want, inner) <= 1e-14);
      CHECK(commutator(rep.X(mu), rep.X(nu)).norm_inf() <= 1e-14);
    }
  }
  // The truncation defect of [a, a†] sits on the top level only.
  const auto& a = rep.annihilator(1);
  const auto defect = commutator(a, a.adjoint()) - rep.identity();
  CHECK(defect.norm_inf_on(rep.interior(2)) <= 1e-14);
  CHECK(defect.norm_inf() > 1.0);
}

TEST_CASE("bracket suites on interiors") {
  SUBCASE("Heisenberg, cutoff 8") {
    const auto rep = check_brackets(realize(build_heisenberg_rep(1.0, 8), 1.0));
    CHECK(rep.brackets.size() > 0);
    CHECK(rep.pass(1e-12));
  }
  SUBCASE("spin reps, s <= 1") {
    for (double l : {0.0, 0.5, 1.0})
      for (double r : {0.0, 0.5, 1.0}) {
        const auto rep = check_brackets(realize(build_spin_rep(l, r), 2.0));
        CAPTURE(rep.max_relative_defect);
        CHECK(rep.pass(1e-12));
      }
  }
  SUBCASE("full (1/2,0) rep, all fifteen generators") {
    const FullRep full(build_heisenberg_rep(1.0, 5), build_spin_rep(0.5, 0.0));
    const auto rep = check_brackets(realize(full, 3.0));
    CHECK(rep.brackets.size() == 105);
    CHECK(rep.pass(1e-12));
  }
}

TEST_CASE("[X, PP] = 2i hbar P needs one more level of head-room") {
  const auto rep = build_heisenberg_rep(1.0, 7);
  for (int mu = 0; mu < 4; ++mu) {
    const auto comm = onshell_violation_commutator(rep, mu);
    const auto rhs = Complex(0.0, 2.0) * rep.P(mu);
    CHECK(defect_on(comm, rhs, rep.interior(3)) <= 1e-12 * rhs.norm_inf());
    CHECK(defect_on(comm, rhs, rep.interior(2)) > 1e-3);
  }
}

TEST_CASE("composite: relative pair is canonical with the opposite sign") {
  const auto s0 = build_spin_rep(0.0, 0.0);
  const auto comp = product_rep(FullRep(build_heisenberg_rep(1.0, 4), s0), FullRep(build_heisenberg_rep(3.0, 4), s0));
  CHECK(comp.reduced_mass == doctest::Approx(0.75));
  for (int mu = 0; mu < 4; ++mu) {
    const auto want = Complex(0.0, eta(mu, mu)) * comp.identity;
    CHECK(defect_on(commutator(comp.R[mu], comp.Q[mu]), Complex(-1.0) * want, comp.interior) <= 1e-12);
    CHECK(defect_on(commutator(comp.X[mu], comp.P[mu]), want, comp.interior) <= 1e-12);
    CHECK(commutator(comp.X[mu], comp.Q[mu]).norm_inf_on(comp.interior) <= 1e-12);
  }
  const auto L = orbital_cm(comp);
  const auto S = composite_spin_tensor(comp);
  for (int k = 0; k < 6; ++k) CHECK(defect_on(L[k] + S[k], comp.J[k], comp.interior) <= 1e-11);
}

TEST_CASE("composite of two (1/2,0) spins splits into C1 = 0 and C1 = 4hbar^2 blocks") {
  const auto half = build_spin_rep(0.5, 0.0);
  const auto c1 = casimir_c1(product_spin(half, half));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(c1.matrix()));
  const auto ev = es.eigenvalues();
  CHECK(std::abs(ev[0]) <= 1e-13);
  for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("contracted boost approaches P T like 1/c") {
  const FullRep full(build_heisenberg_rep(1.0, 6), build_spin_rep(0.5, 0.0));
  const auto inner = full.interior(2);
  double prev = 0.0;
  for (double c : {10.0, 100.0, 1000.0}) {
    const auto [K, PT] = contracted_boost(full, 1, c);
    const double d = (K - PT).norm_inf_on(inner);
    if (prev > 0.0) CHECK(d < prev / 5.0);
    prev = d;
  }
}
