#pragma once

// External electromagnetic fields for the classical flows. A^μ carries an
// upper index; gradients ∂_μA_ν and F_{μν} = ∂_μA_ν − ∂_νA_μ carry lower ones.

#include <functional>
#include <optional>
#include <string>

#include "hr13/minkowski.hpp"

namespace hr13::classical {

class EMField {
public:
  using Potential = std::function<Vec4(const Vec4&)>;
  /// g[μ][ν] = ∂_μA_ν.
  using Gradient = std::function<Mat4(const Vec4&)>;

  EMField(std::string name, Potential potential, std::optional<Gradient> gradient = std::nullopt);

  /// A ≡ 0.
  static EMField none();
  /// Constant E⃗ and B⃗ in the gauge A_ν = −½F_{νμ}x^μ, with F_{i0} = E_i and
  /// F_{ij} = ε_{ijk}B_k.
  static EMField constant(const std::array<double, 3>& E, const std::array<double, 3>& B);
  /// A^1 = a·cos(k_μx^μ); k is given with upper indices and should be lightlike.
  static EMField plane_wave(double amplitude, const Vec4& k);

  const std::string& name() const { return name_; }
  bool analytic() const { return gradient_.has_value(); }

  Vec4 A(const Vec4& x) const { return potential_(x); }
  /// Analytic when available, else central differences with h = 1e−5·(1+|x^μ|).
  Mat4 gradient(const Vec4& x) const;
  Mat4 F(const Vec4& x) const;

private:
  std::string name_;
  Potential potential_;
  std::optional<Gradient> gradient_;
};

/// F_{μν} for constant E⃗, B⃗.
Mat4 constant_field_strength(const std::array<double, 3>& E, const std::array<double, 3>& B);

}  // namespace hr13::classical
