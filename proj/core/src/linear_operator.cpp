#include "hr13/linear_operator.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace hr13 {

namespace {

void require_same_dim(const LinearOperator& a, const LinearOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("operator dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

}  // namespace

LinearOperator::LinearOperator(SparseMatrix matrix, std::string basis_label)
    : matrix_(std::move(matrix)), basis_label_(std::move(basis_label)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("LinearOperator must be square");
  matrix_.makeCompressed();
}

LinearOperator LinearOperator::identity(Eigen::Index dim, std::string basis_label) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return {std::move(m), std::move(basis_label)};
}

LinearOperator LinearOperator::zero(Eigen::Index dim, std::string basis_label) {
  return {SparseMatrix(dim, dim), std::move(basis_label)};
}

LinearOperator LinearOperator::adjoint() const {
  SparseMatrix m = matrix_.adjoint();
  return {std::move(m), basis_label_};
}

double LinearOperator::norm_inf() const {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(matrix_.rows());
  for (int k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

double LinearOperator::norm_inf_on(const BasisMask& columns) const {
  if (static_cast<Eigen::Index>(columns.size()) != matrix_.cols())
    throw std::invalid_argument("mask size does not match operator dimension");
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(matrix_.rows());
  for (int k = 0; k < matrix_.outerSize(); ++k) {
    if (!columns[k]) continue;
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) rows[it.row()] += std::abs(it.value());
  }
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

LinearOperator& LinearOperator::operator+=(const LinearOperator& o) {
  require_same_dim(*this, o);
  matrix_ = matrix_ + o.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator-=(const LinearOperator& o) {
  require_same_dim(*this, o);
  matrix_ = matrix_ - o.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  require_same_dim(a, b);
  SparseMatrix m = (a.matrix_ * b.matrix_).pruned(0.0);
  return {std::move(m), a.basis_label_};
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) { return a * b - b * a; }

LinearOperator kron(const LinearOperator& a, const LinearOperator& b) {
  SparseMatrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return {std::move(m), "(" + a.basis_label() + ")x(" + b.basis_label() + ")"};
}

BasisMask kron(const BasisMask& a, const BasisMask& b) {
  BasisMask out(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = static_cast<char>(a[i] && b[j]);
  return out;
}

Complex expectation(const LinearOperator& op, const Vector& state) {
  const Complex num = state.dot(op.apply(state));
  return num / state.squaredNorm();
}

}  // namespace hr13
