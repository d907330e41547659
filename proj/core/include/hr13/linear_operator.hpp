#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hr13 {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

/// Column mask over a basis; nonzero entries select states.
using BasisMask = std::vector<char>;

/// Complex operator on a labelled finite basis. Stored sparse: the truncated
/// oscillator bases reach dimensions where dense storage is impractical.
class LinearOperator {
public:
  LinearOperator() = default;
  LinearOperator(SparseMatrix matrix, std::string basis_label);

  static LinearOperator identity(Eigen::Index dim, std::string basis_label);
  static LinearOperator zero(Eigen::Index dim, std::string basis_label);

  Eigen::Index dim() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  const std::string& basis_label() const { return basis_label_; }

  LinearOperator adjoint() const;
  Vector apply(const Vector& v) const { return matrix_ * v; }
  /// max_i Σ_j |A_ij|, the operator norm induced by the sup norm.
  double norm_inf() const;
  /// Sup-norm of A restricted to the masked columns (states).
  double norm_inf_on(const BasisMask& columns) const;

  LinearOperator& operator+=(const LinearOperator& o);
  LinearOperator& operator-=(const LinearOperator& o);
  LinearOperator& operator*=(Complex s);

  friend LinearOperator operator+(LinearOperator a, const LinearOperator& b) { return a += b; }
  friend LinearOperator operator-(LinearOperator a, const LinearOperator& b) { return a -= b; }
  friend LinearOperator operator*(Complex s, LinearOperator a) { return a *= s; }
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);

private:
  SparseMatrix matrix_;
  std::string basis_label_;
};

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

/// a ⊗ b; the index of the second factor runs fastest.
LinearOperator kron(const LinearOperator& a, const LinearOperator& b);

/// Mask of the tensor-product basis selecting states whose factors are both masked.
BasisMask kron(const BasisMask& a, const BasisMask& b);

Complex expectation(const LinearOperator& op, const Vector& state);

}  // namespace hr13
