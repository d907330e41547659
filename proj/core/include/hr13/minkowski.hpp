#pragma once

#include <array>
#include <cmath>

namespace hr13 {

/// Four-vector with components indexed 0..3. Whether the indices are upper or
/// lower is fixed by context; classical phase-space data is stored with upper
/// indices.
using Vec4 = std::array<double, 4>;

/// Row-major 4x4 real matrix, m[mu][nu].
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Metric signature diag{-1, 1, 1, 1}.
constexpr double eta(int mu) { return mu == 0 ? -1.0 : 1.0; }
constexpr double eta(int mu, int nu) { return mu == nu ? eta(mu) : 0.0; }

constexpr double dot(const Vec4& a, const Vec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Flips the time component: upper <-> lower index placement.
constexpr Vec4 lower(const Vec4& v) { return {-v[0], v[1], v[2], v[3]}; }
constexpr Vec4 raise(const Vec4& v) { return lower(v); }

constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
constexpr Vec4 operator*(double s, const Vec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

inline double max_abs(const Vec4& a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

constexpr Mat4 zero_mat4() { return {}; }

constexpr Mat4 identity_mat4() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

constexpr Vec4 apply(const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
  return out;
}

/// Totally antisymmetric symbol with lower indices, eps_{0123} = +1.
constexpr int levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] == idx[j]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] > idx[j]) sign = -sign;
  return sign;
}

/// eps^{μνρσ}; raising all four indices with diag{-1,1,1,1} flips the sign.
constexpr int levi_civita_upper(int a, int b, int c, int d) { return -levi_civita(a, b, c, d); }

}  // namespace hr13
