#include "hr13/composite.hpp"

#include "hr13/errors.hpp"

namespace hr13::reps {

CompositeRep product_rep(const FullRep& a, const FullRep& b) {
  if (a.heisenberg().cutoff() != b.heisenberg().cutoff())
    throw PreconditionError("composite requires equal oscillator cutoffs");
  if (a.hbar() != b.hbar()) throw PreconditionError("composite requires equal hbar");

  CompositeRep rep;
  rep.mass_a = a.mass();
  rep.mass_b = b.mass();
  rep.mass = rep.mass_a + rep.mass_b;
  rep.reduced_mass = rep.mass_a * rep.mass_b / rep.mass;
  rep.hbar = a.hbar();

  const auto& ia = a.identity();
  const auto& ib = b.identity();
  const double wa = rep.mass_a / rep.mass, wb = rep.mass_b / rep.mass;
  for (int mu = 0; mu < 4; ++mu) {
    const auto xa = kron(a.X(mu), ib), xb = kron(ia, b.X(mu));
    const auto pa = kron(a.P(mu), ib), pb = kron(ia, b.P(mu));
    rep.X[mu] = Complex(wa) * xa + Complex(wb) * xb;
    rep.P[mu] = pa + pb;
    rep.R[mu] = xa - xb;
    rep.Q[mu] = Complex(wa) * pb - Complex(wb) * pa;
  }
  for (int k = 0; k < 6; ++k) {
    rep.J[k] = kron(a.J()[k], ib) + kron(ia, b.J()[k]);
    rep.S_sum[k] = kron(a.S()[k], ib) + kron(ia, b.S()[k]);
  }
  rep.identity = kron(ia, ib);
  rep.interior = kron(a.interior(2), b.interior(2));
  return rep;
}

LorentzTensor orbital_cm(const CompositeRep& rep) {
  LorentzTensor out;
  for (int k = 0; k < 6; ++k) {
    const auto [mu, nu] = algebra::lorentz_pair(k);
    out[k] = rep.X[mu] * rep.P[nu] - rep.P[mu] * rep.X[nu];
  }
  return out;
}

LorentzTensor composite_spin_tensor(const CompositeRep& rep) {
  LorentzTensor out;
  for (int k = 0; k < 6; ++k) {
    const auto [mu, nu] = algebra::lorentz_pair(k);
    out[k] = rep.S_sum[k] - (rep.R[mu] * rep.Q[nu] - rep.Q[mu] * rep.R[nu]);
  }
  return out;
}

LorentzTensor product_spin(const SpinRep& a, const SpinRep& b) {
  const auto ia = LinearOperator::identity(a.dim(), "spin");
  const auto ib = LinearOperator::identity(b.dim(), "spin");
  LorentzTensor out;
  for (int k = 0; k < 6; ++k) out[k] = kron(a.tensor()[k], ib) + kron(ia, b.tensor()[k]);
  return out;
}

Realization realize(const CompositeRep& rep, double c) {
  Realization r;
  r.hbar = rep.hbar;
  r.c = c;
  r.interior = rep.interior;
  r.label = "composite";
  for (int k = 0; k < 6; ++k) r.ops[k] = Complex(c) * rep.J[k];
  for (int mu = 0; mu < 4; ++mu) {
    r.ops[algebra::GeneratorId::y(mu).index()] = Complex(rep.mass) * rep.X[mu];
    r.ops[algebra::GeneratorId::e(mu).index()] = Complex(c) * rep.P[mu];
  }
  r.ops[algebra::GeneratorId::m().index()] = Complex(rep.mass) * rep.identity;
  return r;
}

}  // namespace hr13::reps
