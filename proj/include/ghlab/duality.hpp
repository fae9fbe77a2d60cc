#pragma once

#include "ghlab/families.hpp"
#include "ghlab/pharmonic.hpp"
#include "ghlab/tension.hpp"

namespace ghlab {

/// A direction set together with the point cloud it is meant to be applied
/// at.  The two constructions below realize the sign-flip principle in its
/// two shapes:
///   pair dual:  directions i*m, points exp(K) exp(iM)   (quotient picture)
///   group dual: directions i*g, points exp(iX)          (whole-group picture)
struct DualSetting {
  OperatorContext context;
  Sampling sampling;
};

inline DualSetting pair_dual_setting(const SymmetricPair& pair, std::uint64_t seed, int samples,
                                     double radius = 0.5) {
  return {dual_pair_context(pair), make_dual_sampling(pair, seed, samples, radius)};
}

inline DualSetting group_dual_setting(const LieAlgebraBasis& basis, std::uint64_t seed, int samples,
                                      double radius = 0.5) {
  return {dual_group_context(basis), make_group_dual_sampling(basis, seed, samples, radius)};
}

/// Eigenvalue estimate on the dual side, with the deviation from the compact
/// constants after a sign flip.  `flip_dev_*` is |dual + compact| for each
/// constant, so a clean flip drives both to zero.
struct DualComparison {
  EigenEstimate dual;
  Complex compact_lambda{0, 0};
  Complex compact_mu{0, 0};
  double lambda_flip_dev = 0.0;
  double mu_flip_dev = 0.0;

  bool flips(double tol) const {
    return lambda_flip_dev < tol && mu_flip_dev < tol && dual.lambda_max_dev < tol && dual.mu_max_dev < tol;
  }
};

inline DualComparison compare_sign_flip(const std::vector<MatrixPolynomial>& family,
                                        Complex compact_lambda, Complex compact_mu,
                                        const DualSetting& dual) {
  DualComparison out;
  out.dual = estimate_eigenvalues(family, dual.context, dual.sampling);
  out.compact_lambda = compact_lambda;
  out.compact_mu = compact_mu;
  out.lambda_flip_dev = std::abs(out.dual.lambda_mean + compact_lambda);
  out.mu_flip_dev = std::abs(out.dual.mu_mean + compact_mu);
  return out;
}

/// Same estimate at two sampling radii; polynomial identities cannot see the
/// radius, so the two means must agree.
struct RadiusProbe {
  EigenEstimate narrow;
  EigenEstimate wide;
  double lambda_gap = 0.0;
  double mu_gap = 0.0;
};

inline RadiusProbe radius_independence_probe(const std::vector<MatrixPolynomial>& family,
                                             const SymmetricPair& pair, std::uint64_t seed, int samples,
                                             double r_narrow = 0.25, double r_wide = 0.5) {
  RadiusProbe out;
  DualSetting a = pair_dual_setting(pair, seed, samples, r_narrow);
  DualSetting b = pair_dual_setting(pair, seed, samples, r_wide);
  out.narrow = estimate_eigenvalues(family, a.context, a.sampling);
  out.wide = estimate_eigenvalues(family, b.context, b.sampling);
  out.lambda_gap = std::abs(out.narrow.lambda_mean - out.wide.lambda_mean);
  out.mu_gap = std::abs(out.narrow.mu_mean - out.wide.mu_mean);
  return out;
}

/// Proper p-harmonic construction on the dual side: the ansatz is built from
/// the flipped constants, checked symbolically, then cross-checked against
/// second differences taken along the dual directions at dual points.
struct DualPHarmonicReport {
  PhiCase dispatch = PhiCase::Generic;
  bool chain_pass = false;
  double crosscheck_dev = 0.0;
  int samples = 0;
};

inline DualPHarmonicReport dual_pharmonic_verify(const MatrixPolynomial& inner, int p,
                                                 const EigenSpec& compact_spec, Complex c1, Complex c2,
                                                 const DualSetting& dual, double h = 1e-4) {
  EigenSpec spec = flipped(compact_spec);
  PhiBuild build = build_phi_p(p, spec, c1, c2);
  DualPHarmonicReport out;
  out.dispatch = build.dispatch;
  out.chain_pass = verify_proper_pharmonic(build.phi, p, spec).pass();
  CrosscheckReport cross = numeric_crosscheck(build.phi, inner, dual.context, spec, dual.sampling, h);
  out.crosscheck_dev = cross.max_rel_dev;
  out.samples = cross.samples;
  return out;
}

/// Defect of g* eta g = eta over a point cloud; eta = diag(I_p, -I_q).  The
/// pair-dual points of the (p, q) block pair must preserve this form.
inline double indefinite_form_defect(const std::vector<Matrix>& points, int p, int q) {
  Matrix eta = Matrix::Zero(p + q, p + q);
  for (int i = 0; i < p; ++i) eta(i, i) = Complex(1, 0);
  for (int i = p; i < p + q; ++i) eta(i, i) = Complex(-1, 0);
  double worst = 0.0;
  for (const Matrix& g : points) worst = std::max(worst, frobenius(Matrix(g.adjoint() * eta * g - eta)));
  return worst;
}

}  // namespace ghlab
