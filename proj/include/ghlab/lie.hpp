#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ghlab/matrix.hpp"
#include "ghlab/rng.hpp"

namespace ghlab {

enum class GroupKind { Unitary, CompactSymplectic };

/// Orthonormal basis of a compact matrix Lie algebra under Re tr(X* Y).
/// `n` is the rank parameter (U(n) or Sp(n)); `ambient` the matrix size
/// (n for the unitary family, 2n for the symplectic one).
struct LieAlgebraBasis {
  GroupKind kind = GroupKind::Unitary;
  int n = 0;
  int ambient = 0;
  std::vector<Matrix> elements;

  int dimension() const { return static_cast<int>(elements.size()); }
};

namespace detail {

inline Matrix unit_entry(int ambient, int r, int c, Complex v) {
  Matrix E = Matrix::Zero(ambient, ambient);
  E(r, c) = v;
  return E;
}

}  // namespace detail

/// Orthonormal basis of u(n): antisymmetric pairs (E_ab - E_ba)/sqrt(2),
/// symmetric pairs i(E_ab + E_ba)/sqrt(2) for a < b, and diagonals i E_aa.
/// Ordering is deterministic: pairs in lexicographic (a, b) order, the real
/// flavour before the imaginary one, diagonals last.
inline LieAlgebraBasis build_unitary_basis(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "build_unitary_basis: n must be >= 1");
  LieAlgebraBasis basis;
  basis.kind = GroupKind::Unitary;
  basis.n = n;
  basis.ambient = n;
  const double s = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Matrix X = Matrix::Zero(n, n);
      X(a, b) = Complex(s, 0);
      X(b, a) = Complex(-s, 0);
      basis.elements.push_back(X);
      Matrix Y = Matrix::Zero(n, n);
      Y(a, b) = Complex(0, s);
      Y(b, a) = Complex(0, s);
      basis.elements.push_back(Y);
    }
  }
  for (int a = 0; a < n; ++a) basis.elements.push_back(detail::unit_entry(n, a, a, Complex(0, 1)));
  return basis;
}

/// Orthonormal basis of sp(n) inside u(2n), block form [[A, B], [-conj(B), conj(A)]]
/// with A anti-Hermitian and B complex symmetric.  Dimension n(2n+1).
inline LieAlgebraBasis build_sp_basis(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "build_sp_basis: n must be >= 1");
  LieAlgebraBasis basis;
  basis.kind = GroupKind::CompactSymplectic;
  basis.n = n;
  basis.ambient = 2 * n;

  auto embed_a = [n](const Matrix& A) {
    Matrix X = Matrix::Zero(2 * n, 2 * n);
    X.topLeftCorner(n, n) = A;
    X.bottomRightCorner(n, n) = A.conjugate();
    return Matrix(X / std::sqrt(2.0));
  };
  auto embed_b = [n](const Matrix& B) {
    Matrix X = Matrix::Zero(2 * n, 2 * n);
    X.topRightCorner(n, n) = B;
    X.bottomLeftCorner(n, n) = -B.conjugate();
    return X;
  };

  // A-type: each u(n) basis element, duplicated into both diagonal blocks.
  for (const Matrix& A : build_unitary_basis(n).elements) basis.elements.push_back(embed_a(A));

  // B-type: symmetric B = E_aa and (E_ab + E_ba)/sqrt(2), real and i-scaled.
  // The off-diagonal embeddings carry an extra 1/sqrt(2) so every element
  // has unit Frobenius norm.
  for (int a = 0; a < n; ++a) {
    Matrix B = detail::unit_entry(n, a, a, Complex(1, 0));
    basis.elements.push_back(embed_b(B / std::sqrt(2.0)));
    Matrix C = detail::unit_entry(n, a, a, Complex(0, 1));
    basis.elements.push_back(embed_b(C / std::sqrt(2.0)));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Matrix B = Matrix::Zero(n, n);
      B(a, b) = B(b, a) = Complex(0.5, 0);
      basis.elements.push_back(embed_b(B));
      Matrix C = Matrix::Zero(n, n);
      C(a, b) = C(b, a) = Complex(0, 0.5);
      basis.elements.push_back(embed_b(C));
    }
  }
  return basis;
}

/// Sum of squared basis elements.  With the Re tr(X* Y) normalization this
/// is -n I on u(n) and -(2n+1)/2 I on sp(n); measured, never assumed.
inline Matrix casimir_sum(const LieAlgebraBasis& basis) {
  Matrix acc = Matrix::Zero(basis.ambient, basis.ambient);
  for (const Matrix& X : basis.elements) acc += X * X;
  return acc;
}

/// Largest deviation of Re tr(Xi* Xj) from the identity matrix.
inline double orthonormality_defect(const std::vector<Matrix>& elements) {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i; j < elements.size(); ++j) {
      double g = metric_inner(elements[i], elements[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

/// Residual of all brackets [Xi, Xj] after projection onto span{Xk}.
/// Zero when the collection spans a Lie subalgebra.
inline double bracket_closure_defect(const std::vector<Matrix>& elements) {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      Matrix B = elements[i] * elements[j] - elements[j] * elements[i];
      Matrix R = B;
      for (const Matrix& X : elements) R -= metric_inner(X, B) * X;
      worst = std::max(worst, R.norm());
    }
  return worst;
}

/// Orthogonal splitting g = k (+) m induced by a diagonal block pattern.
/// kBasis elements are supported on the blocks, mBasis off them; for the
/// symplectic family "block" means the quaternionic index pair {a, n+a}.
struct SymmetricPair {
  LieAlgebraBasis ambient_basis;
  std::vector<int> blocks;
  std::vector<Matrix> k_basis;
  std::vector<Matrix> m_basis;

  int ambient() const { return ambient_basis.ambient; }
};

/// Block id of quaternionic or plain index `r` given sizes (cumulative in
/// `ends`); the symplectic embedding folds index n+a back onto a.
namespace detail {

inline int block_of(int r, int n, GroupKind kind, const std::vector<int>& ends) {
  if (kind == GroupKind::CompactSymplectic && r >= n) r -= n;
  for (std::size_t b = 0; b < ends.size(); ++b)
    if (r < ends[b]) return static_cast<int>(b);
  return -1;
}

}  // namespace detail

inline SymmetricPair build_symmetric_pair(const LieAlgebraBasis& basis, const std::vector<int>& blocks) {
  int total = std::accumulate(blocks.begin(), blocks.end(), 0);
  if (blocks.empty() || total != basis.n)
    throw Error(ErrorKind::BlockMismatch, "build_symmetric_pair: block sizes must sum to n");
  for (int b : blocks)
    if (b < 1) throw Error(ErrorKind::BlockMismatch, "build_symmetric_pair: block sizes must be positive");

  std::vector<int> ends(blocks.size());
  std::partial_sum(blocks.begin(), blocks.end(), ends.begin());

  SymmetricPair pair;
  pair.ambient_basis = basis;
  pair.blocks = blocks;
  for (const Matrix& X : basis.elements) {
    bool diagonal = true;
    for (int r = 0; r < basis.ambient && diagonal; ++r)
      for (int c = 0; c < basis.ambient && diagonal; ++c) {
        if (X(r, c) == Complex(0, 0)) continue;
        if (detail::block_of(r, basis.n, basis.kind, ends) != detail::block_of(c, basis.n, basis.kind, ends))
          diagonal = false;
      }
    (diagonal ? pair.k_basis : pair.m_basis).push_back(X);
  }
  return pair;
}

/// Worst violation of the symmetric-pair bracket relations
/// [k,k] in k, [k,m] in m, [m,m] in k.
inline double pair_bracket_defect(const SymmetricPair& pair) {
  auto project_residual = [](const Matrix& B, const std::vector<Matrix>& onto) {
    Matrix R = B;
    for (const Matrix& X : onto) R -= metric_inner(X, B) * X;
    return R.norm();
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < pair.k_basis.size(); ++i)
    for (std::size_t j = i + 1; j < pair.k_basis.size(); ++j) {
      Matrix B = pair.k_basis[i] * pair.k_basis[j] - pair.k_basis[j] * pair.k_basis[i];
      worst = std::max(worst, project_residual(B, pair.k_basis));
    }
  for (const Matrix& K : pair.k_basis)
    for (const Matrix& M : pair.m_basis) {
      Matrix B = K * M - M * K;
      worst = std::max(worst, project_residual(B, pair.m_basis));
    }
  for (std::size_t i = 0; i < pair.m_basis.size(); ++i)
    for (std::size_t j = i + 1; j < pair.m_basis.size(); ++j) {
      Matrix B = pair.m_basis[i] * pair.m_basis[j] - pair.m_basis[j] * pair.m_basis[i];
      worst = std::max(worst, project_residual(B, pair.k_basis));
    }
  return worst;
}

namespace detail {

/// Tags keeping the different deterministic coefficient streams apart.
enum : std::uint64_t {
  kTagGroupPoint = 1,
  kTagDualVertical = 2,
  kTagDualHorizontal = 3,
  kTagGroupDual = 4,
  kTagSubgroup = 5,
};

inline Matrix coefficient_combination(const std::vector<Matrix>& elements, CoeffStream& stream) {
  Matrix acc = Matrix::Zero(elements.front().rows(), elements.front().cols());
  for (const Matrix& X : elements) acc += stream.next_symmetric() * X;
  return acc;
}

}  // namespace detail

/// Deterministic pseudo-random group point exp(sum c_i X_i), c_i uniform in
/// [-1, 1].  Same (seed, index) gives bit-identical output on every platform
/// and in any call order.
inline Matrix sample_group_point(const LieAlgebraBasis& basis, std::uint64_t seed, std::uint64_t index) {
  CoeffStream stream(seed, detail::kTagGroupPoint, index);
  return matrix_exp(detail::coefficient_combination(basis.elements, stream));
}

/// Dual-space point exp(K) * exp(i M): the vertical factor stays compact, the
/// horizontal coefficients are scaled to norm <= radius so the non-compact
/// factor remains well conditioned.
inline Matrix sample_dual_point(const SymmetricPair& pair, std::uint64_t seed, std::uint64_t index,
                                double radius = 0.5) {
  CoeffStream vstream(seed, detail::kTagDualVertical, index);
  Matrix K = detail::coefficient_combination(pair.k_basis, vstream);

  CoeffStream hstream(seed, detail::kTagDualHorizontal, index);
  std::vector<double> c(pair.m_basis.size());
  double norm2 = 0.0;
  for (double& x : c) {
    x = hstream.next_symmetric();
    norm2 += x * x;
  }
  double scale = radius / std::max(1.0, std::sqrt(norm2));
  Matrix M = Matrix::Zero(pair.ambient(), pair.ambient());
  for (std::size_t i = 0; i < c.size(); ++i) M += (scale * c[i]) * pair.m_basis[i];
  return matrix_exp(K) * matrix_exp(Complex(0, 1) * M);
}

/// Dual point for the group itself viewed as a symmetric space: exp(i X) with
/// X a bounded combination of the full basis (a positive-definite factor in
/// the unitary case).
inline Matrix sample_group_dual_point(const LieAlgebraBasis& basis, std::uint64_t seed, std::uint64_t index,
                                      double radius = 0.5) {
  CoeffStream stream(seed, detail::kTagGroupDual, index);
  std::vector<double> c(basis.elements.size());
  double norm2 = 0.0;
  for (double& x : c) {
    x = stream.next_symmetric();
    norm2 += x * x;
  }
  double scale = radius / std::max(1.0, std::sqrt(norm2));
  Matrix X = Matrix::Zero(basis.ambient, basis.ambient);
  for (std::size_t i = 0; i < c.size(); ++i) X += (scale * c[i]) * basis.elements[i];
  return matrix_exp(Complex(0, 1) * X);
}

/// Point of the block subgroup K = exp(k).  With det_one set, the generator
/// is traceless so the result lies in the determinant-1 subgroup.
inline Matrix sample_subgroup_point(const SymmetricPair& pair, std::uint64_t seed, std::uint64_t index,
                                    bool det_one = false) {
  CoeffStream stream(seed, detail::kTagSubgroup, index);
  Matrix K = detail::coefficient_combination(pair.k_basis, stream);
  if (det_one) {
    Complex t = K.trace() / Complex(static_cast<double>(pair.ambient()), 0);
    K -= t * Matrix::Identity(pair.ambient(), pair.ambient());
  }
  return matrix_exp(K);
}

}  // namespace ghlab
