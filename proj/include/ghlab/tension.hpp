#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ghlab/lie.hpp"
#include "ghlab/poly.hpp"

namespace ghlab {

/// A set of directions to sum second-order jets over.  For the full algebra
/// this realizes the Laplace-Beltrami operator of the bi-invariant metric:
/// the connection term vanishes because nabla_Z Z = [Z, Z]/2 = 0 for
/// left-invariant fields, so tau reduces to the plain sum of Z^2.
struct OperatorContext {
  std::vector<Matrix> directions;
  std::string label;
};

inline OperatorContext full_context(const LieAlgebraBasis& basis) {
  return {basis.elements, "full"};
}

inline OperatorContext horizontal_context(const SymmetricPair& pair) {
  return {pair.m_basis, "horizontal"};
}

inline OperatorContext vertical_context(const SymmetricPair& pair) {
  return {pair.k_basis, "vertical"};
}

/// Dual directions i * m: multiplying the horizontal basis by i turns the
/// compact horizontal sum into the non-compact one and flips its sign on
/// polynomial observables.
inline OperatorContext dual_pair_context(const SymmetricPair& pair) {
  OperatorContext ctx;
  ctx.label = "dual-horizontal";
  ctx.directions.reserve(pair.m_basis.size());
  for (const Matrix& M : pair.m_basis) ctx.directions.push_back(Complex(0, 1) * M);
  return ctx;
}

/// Dual directions i * g for the group itself viewed as a symmetric space.
inline OperatorContext dual_group_context(const LieAlgebraBasis& basis) {
  OperatorContext ctx;
  ctx.label = "dual-full";
  ctx.directions.reserve(basis.elements.size());
  for (const Matrix& X : basis.elements) ctx.directions.push_back(Complex(0, 1) * X);
  return ctx;
}

/// Precomputed curve data at a point: first[i] = g X_i and
/// second[i] = g X_i^2 / 2, shared by every polynomial evaluated at g.
struct JetFrame {
  Matrix g;
  std::vector<Matrix> first;
  std::vector<Matrix> second;

  JetFrame(const Matrix& point, const OperatorContext& ctx) : g(point) {
    first.reserve(ctx.directions.size());
    second.reserve(ctx.directions.size());
    for (const Matrix& X : ctx.directions) {
      if (X.rows() != g.rows() || X.cols() != g.cols())
        throw Error(ErrorKind::ShapeMismatch, "JetFrame: direction shape differs from point shape");
      Matrix gX = g * X;
      first.push_back(gX);
      second.push_back(0.5 * (gX * X));
    }
  }

  std::size_t size() const { return first.size(); }
};

inline Jet2 jet_at(const MatrixPolynomial& f, const JetFrame& frame, std::size_t i) {
  if (frame.g.rows() != f.rows || frame.g.cols() != f.cols)
    throw Error(ErrorKind::ShapeMismatch, "jet_at: polynomial shape differs from frame shape");
  return detail::jet_from_curve(f, frame.g, frame.first[i], frame.second[i]);
}

/// Tension field value: sum over the context of the exact second derivative
/// along each exp curve.
inline Complex tau_at(const MatrixPolynomial& f, const JetFrame& frame) {
  Complex acc(0, 0);
  for (std::size_t i = 0; i < frame.size(); ++i) acc += 2.0 * jet_at(f, frame, i).d2;
  return acc;
}

inline Complex tau_at(const MatrixPolynomial& f, const Matrix& g, const OperatorContext& ctx) {
  return tau_at(f, JetFrame(g, ctx));
}

/// First derivatives of f along every context direction at the frame point.
inline std::vector<Complex> gradient_components(const MatrixPolynomial& f, const JetFrame& frame) {
  std::vector<Complex> out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] = jet_at(f, frame, i).d1;
  return out;
}

/// Conformality value kappa(f, h) = sum_i (X_i f)(X_i h); complex bilinear,
/// no conjugation (the observables are holomorphic).
inline Complex kappa_at(const MatrixPolynomial& f, const MatrixPolynomial& h, const JetFrame& frame) {
  Complex acc(0, 0);
  for (std::size_t i = 0; i < frame.size(); ++i) acc += jet_at(f, frame, i).d1 * jet_at(h, frame, i).d1;
  return acc;
}

inline Complex kappa_at(const MatrixPolynomial& f, const MatrixPolynomial& h, const Matrix& g,
                        const OperatorContext& ctx) {
  return kappa_at(f, h, JetFrame(g, ctx));
}

/// Deterministic point source with rejection control.  `point(seed, index)`
/// must be pure; indices skipped by rejection stay skipped, so a fixed
/// (seed, samples) always visits the same points.
struct Sampling {
  std::uint64_t seed = 42;
  int samples = 50;
  double floor_abs = 1e-6;
  int max_rejects = 100;
  std::function<Matrix(std::uint64_t, std::uint64_t)> point;
};

inline Sampling make_group_sampling(const LieAlgebraBasis& basis, std::uint64_t seed, int samples) {
  Sampling s;
  s.seed = seed;
  s.samples = samples;
  s.point = [basis](std::uint64_t sd, std::uint64_t idx) { return sample_group_point(basis, sd, idx); };
  return s;
}

inline Sampling make_dual_sampling(const SymmetricPair& pair, std::uint64_t seed, int samples,
                                   double radius = 0.5) {
  Sampling s;
  s.seed = seed;
  s.samples = samples;
  s.point = [pair, radius](std::uint64_t sd, std::uint64_t idx) {
    return sample_dual_point(pair, sd, idx, radius);
  };
  return s;
}

inline Sampling make_group_dual_sampling(const LieAlgebraBasis& basis, std::uint64_t seed, int samples,
                                         double radius = 0.5) {
  Sampling s;
  s.seed = seed;
  s.samples = samples;
  s.point = [basis, radius](std::uint64_t sd, std::uint64_t idx) {
    return sample_group_dual_point(basis, sd, idx, radius);
  };
  return s;
}

/// Collects points where every observable in `family` clears the magnitude
/// floor.  Throws DegenerateSample after `max_rejects` consecutive misses.
inline std::vector<Matrix> draw_admissible_points(const std::vector<MatrixPolynomial>& family,
                                                  const Sampling& s) {
  std::vector<Matrix> points;
  points.reserve(static_cast<std::size_t>(s.samples));
  std::uint64_t index = 0;
  int consecutive_rejects = 0;
  while (points.size() < static_cast<std::size_t>(s.samples)) {
    Matrix g = s.point(s.seed, index++);
    bool admissible = true;
    for (const MatrixPolynomial& f : family)
      if (std::abs(evaluate(f, g)) <= s.floor_abs) {
        admissible = false;
        break;
      }
    if (admissible) {
      points.push_back(std::move(g));
      consecutive_rejects = 0;
    } else if (++consecutive_rejects > s.max_rejects) {
      throw Error(ErrorKind::DegenerateSample,
                  "draw_admissible_points: rejection limit hit, observables vanish on the sampled set");
    }
  }
  return points;
}

/// Sampled eigenvalue estimate.  lambda ratios are tau(f)/f per member and
/// point; mu ratios are kappa(f, h)/(f h) over unordered member pairs
/// including the diagonal.  Deviations are max distance from the mean.
struct EigenEstimate {
  Complex lambda_mean{0, 0};
  double lambda_max_dev = 0.0;
  Complex mu_mean{0, 0};
  double mu_max_dev = 0.0;
  int samples = 0;

  bool is_eigen(double tol) const { return lambda_max_dev < tol && mu_max_dev < tol; }
};

inline EigenEstimate estimate_eigenvalues(const std::vector<MatrixPolynomial>& family,
                                          const OperatorContext& ctx, const Sampling& s) {
  if (family.empty()) throw Error(ErrorKind::InvalidArgument, "estimate_eigenvalues: empty family");
  for (const MatrixPolynomial& f : family)
    if (f.degree() < 1)
      throw Error(ErrorKind::InvalidArgument, "estimate_eigenvalues: constant members are not admissible");

  std::vector<Complex> lambda_ratios;
  std::vector<Complex> mu_ratios;
  for (const Matrix& g : draw_admissible_points(family, s)) {
    JetFrame frame(g, ctx);
    std::vector<Complex> values(family.size());
    std::vector<std::vector<Complex>> grads(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      values[i] = evaluate(family[i], g);
      grads[i] = gradient_components(family[i], frame);
      lambda_ratios.push_back(tau_at(family[i], frame) / values[i]);
    }
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i; j < family.size(); ++j) {
        Complex kappa(0, 0);
        for (std::size_t d = 0; d < frame.size(); ++d) kappa += grads[i][d] * grads[j][d];
        mu_ratios.push_back(kappa / (values[i] * values[j]));
      }
  }

  auto reduce = [](const std::vector<Complex>& ratios, Complex& mean, double& max_dev) {
    Complex sum(0, 0);
    for (Complex r : ratios) sum += r;
    mean = sum / Complex(static_cast<double>(ratios.size()), 0);
    max_dev = 0.0;
    for (Complex r : ratios) max_dev = std::max(max_dev, std::abs(r - mean));
  };

  EigenEstimate est;
  est.samples = s.samples;
  reduce(lambda_ratios, est.lambda_mean, est.lambda_max_dev);
  reduce(mu_ratios, est.mu_mean, est.mu_max_dev);
  return est;
}

/// Comparison of the full-algebra tension sum against the horizontal one,
/// with the vertical first-derivative residual that certifies (or refutes)
/// descent to the block quotient.  A failed residual is a finding, not an
/// exception: the caller decides how to report it.
struct QuotientComparison {
  double k_residual_max = 0.0;
  double gap_max = 0.0;
  double split_defect_max = 0.0;
  Complex lambda_full_mean{0, 0};
  Complex lambda_horizontal_mean{0, 0};
  bool invariant = false;
  int samples = 0;
};

inline QuotientComparison compare_full_vs_horizontal(const MatrixPolynomial& f, const SymmetricPair& pair,
                                                     const Sampling& s, double tol) {
  OperatorContext full = full_context(pair.ambient_basis);
  OperatorContext horiz = horizontal_context(pair);
  OperatorContext vert = vertical_context(pair);

  QuotientComparison out;
  out.samples = s.samples;
  Complex full_sum(0, 0), horiz_sum(0, 0);
  for (const Matrix& g : draw_admissible_points({f}, s)) {
    double scale = std::max(1.0, std::abs(evaluate(f, g)));
    Complex tau_full = tau_at(f, g, full);
    Complex tau_horiz = tau_at(f, g, horiz);
    Complex tau_vert = tau_at(f, g, vert);
    out.gap_max = std::max(out.gap_max, std::abs(tau_full - tau_horiz) / scale);
    // The split defect checks that k and m partition the ambient basis:
    // the three sums are computed from independent frames, so agreement is
    // not automatic bookkeeping.
    out.split_defect_max =
        std::max(out.split_defect_max, std::abs(tau_full - tau_vert - tau_horiz) / scale);
    JetFrame vframe(g, vert);
    for (std::size_t i = 0; i < vframe.size(); ++i)
      out.k_residual_max = std::max(out.k_residual_max, std::abs(jet_at(f, vframe, i).d1) / scale);
    full_sum += tau_full / evaluate(f, g);
    horiz_sum += tau_horiz / evaluate(f, g);
  }
  Complex count(static_cast<double>(s.samples), 0);
  out.lambda_full_mean = full_sum / count;
  out.lambda_horizontal_mean = horiz_sum / count;
  out.invariant = out.k_residual_max < tol;
  return out;
}

}  // namespace ghlab
