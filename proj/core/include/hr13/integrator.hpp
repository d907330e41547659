#pragma once

// Fixed-step implicit midpoint rule, z₁ = z₀ + h·f((z₀+z₁)/2), solved by
// Newton iteration with a central-difference Jacobian of f.

#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "hr13/errors.hpp"

namespace hr13::classical {

struct MidpointOptions {
  double tolerance = 1e-12;  ///< on ‖Δz‖∞ / (1 + ‖z‖∞)
  int max_iterations = 50;
};

template <int N>
using StateN = Eigen::Matrix<double, N, 1>;

template <int N>
Eigen::Matrix<double, N, N> fd_jacobian(const std::function<StateN<N>(const StateN<N>&)>& f, const StateN<N>& z) {
  Eigen::Matrix<double, N, N> J;
  for (int j = 0; j < N; ++j) {
    const double h = 1e-6 * (1.0 + std::fabs(z[j]));
    StateN<N> zp = z, zm = z;
    zp[j] += h;
    zm[j] -= h;
    J.col(j) = (f(zp) - f(zm)) / (2.0 * h);
  }
  return J;
}

/// One step; throws NumericalError naming `step_index` if Newton stalls.
template <int N>
StateN<N> implicit_midpoint_step(const std::function<StateN<N>(const StateN<N>&)>& f, const StateN<N>& z0,
                                 double h, long step_index = 0, const MidpointOptions& opt = {}) {
  const StateN<N> f0 = f(z0);
  if (!f0.allFinite()) throw NumericalError("vector field not finite at step " + std::to_string(step_index));
  StateN<N> z1 = z0 + h * f0;
  const auto residual = [&](const StateN<N>& z) -> StateN<N> { return z - z0 - h * f(0.5 * (z0 + z)); };

  Eigen::Matrix<double, N, N> G =
      Eigen::Matrix<double, N, N>::Identity() - 0.5 * h * fd_jacobian<N>(f, 0.5 * (z0 + z1));
  Eigen::PartialPivLU<Eigen::Matrix<double, N, N>> lu(G);

  for (int it = 0; it < opt.max_iterations; ++it) {
    const StateN<N> dz = lu.solve(-residual(z1));
    z1 += dz;
    if (!z1.allFinite()) break;
    if (dz.template lpNorm<Eigen::Infinity>() <= opt.tolerance * (1.0 + z1.template lpNorm<Eigen::Infinity>())) {
      z1 += lu.solve(-residual(z1));
      return z1;
    }
    if (it == 2) {
      G = Eigen::Matrix<double, N, N>::Identity() - 0.5 * h * fd_jacobian<N>(f, 0.5 * (z0 + z1));
      lu.compute(G);
    }
  }
  throw NumericalError("implicit midpoint Newton iteration did not converge at step " + std::to_string(step_index));
}

}  // namespace hr13::classical
