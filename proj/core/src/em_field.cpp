#include "hr13/em_field.hpp"

#include <cmath>

namespace hr13::classical {

EMField::EMField(std::string name, Potential potential, std::optional<Gradient> gradient)
    : name_(std::move(name)), potential_(std::move(potential)), gradient_(std::move(gradient)) {}

EMField EMField::none() {
  return {"none", [](const Vec4&) { return Vec4{}; }, [](const Vec4&) { return zero_mat4(); }};
}

Mat4 constant_field_strength(const std::array<double, 3>& E, const std::array<double, 3>& B) {
  Mat4 f{};
  for (int i = 1; i <= 3; ++i) {
    f[i][0] = E[i - 1];
    f[0][i] = -E[i - 1];
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        // ε_{ijk} restricted to spatial indices.
        const int e = levi_civita(0, i, j, k);
        if (e != 0) f[i][j] += e * B[k - 1];
      }
  return f;
}

EMField EMField::constant(const std::array<double, 3>& E, const std::array<double, 3>& B) {
  const Mat4 f = constant_field_strength(E, B);
  auto potential = [f](const Vec4& x) {
    Vec4 a_lower{};
    for (int nu = 0; nu < 4; ++nu)
      for (int mu = 0; mu < 4; ++mu) a_lower[nu] -= 0.5 * f[nu][mu] * x[mu];
    return raise(a_lower);
  };
  auto gradient = [f](const Vec4&) {
    Mat4 g{};
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) g[mu][nu] = 0.5 * f[mu][nu];
    return g;
  };
  return {"constant", potential, gradient};
}

EMField EMField::plane_wave(double amplitude, const Vec4& k) {
  const Vec4 k_lower = lower(k);
  auto phase = [k_lower](const Vec4& x) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += k_lower[mu] * x[mu];
    return s;
  };
  auto potential = [amplitude, phase](const Vec4& x) { return Vec4{0.0, amplitude * std::cos(phase(x)), 0.0, 0.0}; };
  auto gradient = [amplitude, phase, k_lower](const Vec4& x) {
    Mat4 g{};
    const double s = -amplitude * std::sin(phase(x));
    for (int mu = 0; mu < 4; ++mu) g[mu][1] = s * k_lower[mu];
    return g;
  };
  return {"plane-wave", potential, gradient};
}

Mat4 EMField::gradient(const Vec4& x) const {
  if (gradient_) return (*gradient_)(x);
  Mat4 g{};
  for (int mu = 0; mu < 4; ++mu) {
    const double h = 1e-5 * (1.0 + std::fabs(x[mu]));
    Vec4 xp = x, xm = x;
    xp[mu] += h;
    xm[mu] -= h;
    const Vec4 ap = lower(potential_(xp));
    const Vec4 am = lower(potential_(xm));
    for (int nu = 0; nu < 4; ++nu) g[mu][nu] = (ap[nu] - am[nu]) / (2.0 * h);
  }
  return g;
}

Mat4 EMField::F(const Vec4& x) const {
  const Mat4 g = gradient(x);
  Mat4 f{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) f[mu][nu] = g[mu][nu] - g[nu][mu];
  return f;
}

}  // namespace hr13::classical
