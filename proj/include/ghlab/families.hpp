#pragma once

#include <numeric>
#include <vector>

#include "ghlab/tension.hpp"

namespace ghlab {

/// Strictly increasing 1-based index tuple r_1 < ... < r_p <= upper_bound,
/// labelling one minor of the family.
struct PermutationIndex {
  std::vector<int> indices;
  int upper_bound = 0;
};

/// All p-element increasing tuples in {1..bound}, lexicographic.  The bound
/// is passed explicitly because the complex family draws rows from p+q while
/// the quaternionic one draws columns from 2(p+q).
inline std::vector<PermutationIndex> enumerate_pi(int p, int q, int bound) {
  if (p < 1 || q < 1) throw Error(ErrorKind::InvalidArgument, "enumerate_pi: p and q must be >= 1");
  if (bound < p) throw Error(ErrorKind::IndexOutOfRange, "enumerate_pi: bound smaller than tuple size");
  std::vector<PermutationIndex> out;
  std::vector<int> tuple(p);
  std::iota(tuple.begin(), tuple.end(), 1);
  while (true) {
    out.push_back({tuple, bound});
    int i = p - 1;
    while (i >= 0 && tuple[i] == bound - (p - 1 - i)) --i;
    if (i < 0) break;
    ++tuple[i];
    for (int j = i + 1; j < p; ++j) tuple[j] = tuple[j - 1] + 1;
  }
  return out;
}

enum class FamilyKind { ComplexMinor, QuaternionicMinor };

/// A finite family of minor observables together with the constants the
/// source text claims for it.  Claims are data to test, not assumptions:
/// every report pairs them with measured values.
struct EigenFamily {
  FamilyKind kind = FamilyKind::ComplexMinor;
  int p = 0;
  int q = 0;
  int ambient = 0;
  std::vector<PermutationIndex> labels;
  std::vector<MatrixPolynomial> members;
  Complex claimed_lambda{0, 0};
  Complex claimed_mu{0, 0};
};

/// Minors of the first p columns with row sets ranging over all p-tuples of
/// {1..p+q}.  Claimed constants -p(q+1) and -p.
inline EigenFamily complex_family(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorKind::InvalidArgument, "complex_family: p and q must be >= 1");
  EigenFamily fam;
  fam.kind = FamilyKind::ComplexMinor;
  fam.p = p;
  fam.q = q;
  fam.ambient = p + q;
  fam.labels = enumerate_pi(p, q, p + q);
  std::vector<int> col_idx(p);
  std::iota(col_idx.begin(), col_idx.end(), 1);
  for (const PermutationIndex& pi : fam.labels)
    fam.members.push_back(minor_polynomial(fam.ambient, fam.ambient, pi.indices, col_idx));
  fam.claimed_lambda = Complex(-static_cast<double>(p) * (q + 1), 0);
  fam.claimed_mu = Complex(-static_cast<double>(p), 0);
  return fam;
}

/// Minors of the first p rows in the 2(p+q)-dimensional complex picture of
/// Sp(p+q), column sets ranging over p-tuples of {1..2(p+q)}.  The claimed
/// constants (-2pq, -p) are recorded verbatim; measurement adjudicates them.
inline EigenFamily quaternionic_family(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorKind::InvalidArgument, "quaternionic_family: p and q must be >= 1");
  EigenFamily fam;
  fam.kind = FamilyKind::QuaternionicMinor;
  fam.p = p;
  fam.q = q;
  fam.ambient = 2 * (p + q);
  fam.labels = enumerate_pi(p, q, fam.ambient);
  std::vector<int> row_idx(p);
  std::iota(row_idx.begin(), row_idx.end(), 1);
  for (const PermutationIndex& pi : fam.labels)
    fam.members.push_back(minor_polynomial(fam.ambient, fam.ambient, row_idx, pi.indices));
  fam.claimed_lambda = Complex(-2.0 * p * q, 0);
  fam.claimed_mu = Complex(-static_cast<double>(p), 0);
  return fam;
}

/// Measured residuals for the candidate invariance statements of a function
/// under the block subgroup: value/modulus, left/right action, full K and
/// its determinant-1 subgroup.  The classification settles which descent
/// statement actually holds; nothing is taken from the source text here.
struct InvarianceReport {
  double left_value = 0.0;
  double right_value = 0.0;
  double left_modulus = 0.0;
  double right_modulus = 0.0;
  double left_value_det1 = 0.0;
  double right_value_det1 = 0.0;
  double left_modulus_det1 = 0.0;
  double right_modulus_det1 = 0.0;

  bool holds_right_modulus(double tol) const { return right_modulus < tol; }
  bool holds_right_value(double tol) const { return right_value < tol; }
  bool holds_left_value(double tol) const { return left_value < tol; }
};

inline InvarianceReport invariance_probe(const MatrixPolynomial& f, const SymmetricPair& pair,
                                         const Sampling& s) {
  InvarianceReport rep;
  std::vector<Matrix> points = draw_admissible_points({f}, s);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Matrix& g = points[i];
    Complex fg = evaluate(f, g);
    for (bool det_one : {false, true}) {
      Matrix k = sample_subgroup_point(pair, s.seed, i, det_one);
      Complex f_left = evaluate(f, Matrix(k * g));
      Complex f_right = evaluate(f, Matrix(g * k));
      double lv = std::abs(f_left - fg);
      double rv = std::abs(f_right - fg);
      double lm = std::abs(std::abs(f_left) - std::abs(fg));
      double rm = std::abs(std::abs(f_right) - std::abs(fg));
      if (det_one) {
        rep.left_value_det1 = std::max(rep.left_value_det1, lv);
        rep.right_value_det1 = std::max(rep.right_value_det1, rv);
        rep.left_modulus_det1 = std::max(rep.left_modulus_det1, lm);
        rep.right_modulus_det1 = std::max(rep.right_modulus_det1, rm);
      } else {
        rep.left_value = std::max(rep.left_value, lv);
        rep.right_value = std::max(rep.right_value, rv);
        rep.left_modulus = std::max(rep.left_modulus, lm);
        rep.right_modulus = std::max(rep.right_modulus, rm);
      }
    }
  }
  return rep;
}

}  // namespace ghlab
