#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>

#include "ghlab/error.hpp"

namespace ghlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Matrix exponential.  Delegates to Eigen's scaling-and-squaring Pade
/// implementation; relative accuracy is well below 1e-13 for ||X|| <= 10.
inline Matrix matrix_exp(const Matrix& X) {
  if (X.rows() != X.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix_exp: matrix not square");
  return X.exp();
}

inline double frobenius(const Matrix& M) { return M.norm(); }

/// ||g* g - I||_F, zero for points of U(n).
inline double unitarity_defect(const Matrix& g) {
  return (g.adjoint() * g - Matrix::Identity(g.rows(), g.cols())).norm();
}

inline bool is_unitary(const Matrix& g, double tol = 1e-10) { return unitarity_defect(g) < tol; }

/// ||X* + X||_F, zero for elements of u(n).
inline double antihermitian_defect(const Matrix& X) { return (X.adjoint() + X).norm(); }

/// The standard symplectic form J on C^{2n}, block form [[0, I], [-I, 0]].
inline Matrix symplectic_form(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = Complex(1, 0);
    J(n + i, i) = Complex(-1, 0);
  }
  return J;
}

/// ||g^T J g - J||_F, zero for points of Sp(n) in the 2n-dim complex picture.
inline double symplectic_defect(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0)
    throw Error(ErrorKind::ShapeMismatch, "symplectic_defect: expected even square matrix");
  Matrix J = symplectic_form(static_cast<int>(g.rows()) / 2);
  return (g.transpose() * J * g - J).norm();
}

/// ||X + J conj(X) J||_F; zero exactly when X carries the quaternionic
/// block structure [[A, B], [-conj(B), conj(A)]].
inline double quaternionic_structure_defect(const Matrix& X) {
  if (X.rows() != X.cols() || X.rows() % 2 != 0)
    throw Error(ErrorKind::ShapeMismatch, "quaternionic_structure_defect: expected even square matrix");
  Matrix J = symplectic_form(static_cast<int>(X.rows()) / 2);
  return (X + J * X.conjugate() * J).norm();
}

/// Real Hilbert-Schmidt inner product Re tr(X* Y): the bi-invariant metric
/// every operator in this library is normalized against.
inline double metric_inner(const Matrix& X, const Matrix& Y) {
  return (X.adjoint() * Y).trace().real();
}

}  // namespace ghlab
