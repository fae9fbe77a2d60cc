#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ghlab/tension.hpp"

namespace ghlab {

/// Constants (lambda, mu) of an eigenfunction, fed into the reduced operator
/// L f = mu z^2 f'' + lambda z f'.
struct EigenSpec {
  Complex lambda{0, 0};
  Complex mu{0, 0};
};

inline EigenSpec flipped(const EigenSpec& spec) { return {-spec.lambda, -spec.mu}; }

/// Finite combinations  sum c * z^a * log^b(z)  with complex exponent a and
/// integer log power 0 <= b <= 64.  Terms are kept canonically ordered
/// (descending log power, then exponent lexicographic on (re, im)); nearby
/// exponents merge within 1e-12 and coefficients below 1e-14 are swept away
/// after every arithmetic step, so "exactly zero" is a decidable state.
class LogPolynomial {
public:
  static constexpr int kMaxLogPower = 64;
  static constexpr double kSweepEps = 1e-14;
  static constexpr double kExponentMergeEps = 1e-12;

  struct Key {
    Complex a{0, 0};
    int b = 0;
  };

  struct KeyLess {
    bool operator()(const Key& x, const Key& y) const {
      if (x.b != y.b) return x.b > y.b;
      if (x.a.real() != y.a.real()) return x.a.real() < y.a.real();
      return x.a.imag() < y.a.imag();
    }
  };

  using TermMap = std::map<Key, Complex, KeyLess>;

  LogPolynomial() = default;

  void add_term(Complex a, int b, Complex c) {
    if (b < 0) throw Error(ErrorKind::InvalidArgument, "LogPolynomial: negative log power");
    if (b > kMaxLogPower) throw Error(ErrorKind::LogPowerOverflow, "LogPolynomial: log power above 64");
    if (c == Complex(0, 0)) return;
    for (auto& [key, coeff] : m_terms) {
      if (key.b == b && std::abs(key.a - a) < kExponentMergeEps) {
        coeff += c;
        return;
      }
    }
    m_terms[Key{a, b}] = c;
  }

  void sweep() {
    for (auto it = m_terms.begin(); it != m_terms.end();)
      it = (std::abs(it->second) < kSweepEps) ? m_terms.erase(it) : std::next(it);
  }

  const TermMap& terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }

  int max_log_power() const {
    int b = 0;
    for (const auto& [k, c] : m_terms) b = std::max(b, k.b);
    return b;
  }

private:
  TermMap m_terms;
};

/// One application of L = mu z^2 d^2/dz^2 + lambda z d/dz.  On a single term
/// z^a log^b the image is
///   z^a [ (mu a(a-1) + lambda a) log^b
///       + b (mu (2a-1) + lambda) log^(b-1)
///       + mu b(b-1) log^(b-2) ],
/// so the whole map is term-local and exact in the coefficient field.
inline LogPolynomial apply_L(const LogPolynomial& f, const EigenSpec& spec) {
  LogPolynomial out;
  const Complex lambda = spec.lambda;
  const Complex mu = spec.mu;
  for (const auto& [key, c] : f.terms()) {
    const Complex a = key.a;
    const double b = static_cast<double>(key.b);
    out.add_term(a, key.b, c * (mu * a * (a - 1.0) + lambda * a));
    if (key.b >= 1) out.add_term(a, key.b - 1, c * b * (mu * (2.0 * a - 1.0) + lambda));
    if (key.b >= 2) out.add_term(a, key.b - 2, c * mu * b * (b - 1.0));
  }
  out.sweep();
  return out;
}

/// Which branch of the order-p ansatz was taken.
enum class PhiCase { MuZero, LambdaEqualsMu, Generic };

struct PhiBuild {
  LogPolynomial phi;
  PhiCase dispatch = PhiCase::Generic;
  /// Set when |lambda - mu| fell below the case tolerance without being an
  /// exact tie; the tie branch is used and the ambiguity is surfaced to the
  /// caller for logging.
  bool ambiguous = false;
};

/// The order-p ansatz:
///   mu = 0:        c1 log^(p-1)
///   lambda = mu:   c1 log^(2p-1) + c2 log^(2p-2)
///   otherwise:     c1 z^(1 - lambda/mu) log^(p-1) + c2 log^(p-1)
/// The second constant is unused in the first case.
inline PhiBuild build_phi_p(int p, const EigenSpec& spec, Complex c1, Complex c2,
                            double case_tol = 1e-12) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "build_phi_p: order must be >= 1");
  if (std::abs(spec.lambda) < case_tol && std::abs(spec.mu) < case_tol)
    throw Error(ErrorKind::BothZero, "build_phi_p: lambda and mu both vanish");

  PhiBuild out;
  if (std::abs(spec.mu) < case_tol) {
    out.dispatch = PhiCase::MuZero;
    out.phi.add_term(Complex(0, 0), p - 1, c1);
  } else if (std::abs(spec.lambda - spec.mu) < case_tol) {
    out.dispatch = PhiCase::LambdaEqualsMu;
    out.ambiguous = spec.lambda != spec.mu;
    out.phi.add_term(Complex(0, 0), 2 * p - 1, c1);
    if (2 * p - 2 >= 0) out.phi.add_term(Complex(0, 0), 2 * p - 2, c2);
  } else {
    out.dispatch = PhiCase::Generic;
    out.phi.add_term(Complex(1, 0) - spec.lambda / spec.mu, p - 1, c1);
    out.phi.add_term(Complex(0, 0), p - 1, c2);
  }
  out.phi.sweep();
  return out;
}

/// Full certificate chain f, Lf, ..., L^p f.  Proper order p means the last
/// entry vanishes and the one before it does not.
struct ProperPHarmonicChain {
  std::vector<LogPolynomial> chain;
  bool vanishes_at_order = false;
  bool sharp_below_order = false;

  bool pass() const { return vanishes_at_order && sharp_below_order; }
};

inline ProperPHarmonicChain verify_proper_pharmonic(const LogPolynomial& f, int p, const EigenSpec& spec) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "verify_proper_pharmonic: order must be >= 1");
  ProperPHarmonicChain out;
  out.chain.push_back(f);
  for (int k = 0; k < p; ++k) out.chain.push_back(apply_L(out.chain.back(), spec));
  out.vanishes_at_order = out.chain[static_cast<std::size_t>(p)].is_zero();
  out.sharp_below_order = !out.chain[static_cast<std::size_t>(p) - 1].is_zero();
  return out;
}

/// Principal-branch evaluation; callers must keep z off the cut (-inf, 0].
inline Complex evaluate(const LogPolynomial& f, Complex z) {
  Complex logz = std::log(z);
  Complex acc(0, 0);
  for (const auto& [key, c] : f.terms()) {
    Complex term = c * std::exp(key.a * logz);
    for (int k = 0; k < key.b; ++k) term *= logz;
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Numeric side: central second differences of f(phi(g exp(tX))) summed over a
// direction set.  This is the only place a step size appears; it exists to
// cross-check the exact jet path against an independent discretization.

namespace detail {

/// Admissible sample for branch-safe evaluation: the inner value stays away
/// from the cut and from both ends of the magnitude window.
inline bool branch_safe(Complex w) {
  double m = std::abs(w);
  return m > 1e-3 && m < 1e3 && std::abs(std::arg(w)) < M_PI - 0.1;
}

}  // namespace detail

inline std::vector<Matrix> draw_branch_safe_points(const MatrixPolynomial& phi, const Sampling& s) {
  std::vector<Matrix> points;
  std::uint64_t index = 0;
  int consecutive_rejects = 0;
  while (points.size() < static_cast<std::size_t>(s.samples)) {
    Matrix g = s.point(s.seed, index++);
    if (detail::branch_safe(evaluate(phi, g))) {
      points.push_back(std::move(g));
      consecutive_rejects = 0;
    } else if (++consecutive_rejects > s.max_rejects) {
      throw Error(ErrorKind::DegenerateSample,
                  "draw_branch_safe_points: inner values keep leaving the principal branch window");
    }
  }
  return points;
}

/// Second-difference tension value of f(phi(.)) at g over the context.
inline Complex numeric_tau(const LogPolynomial& f, const MatrixPolynomial& phi, const Matrix& g,
                           const OperatorContext& ctx, double h) {
  Complex acc(0, 0);
  Complex center = evaluate(f, evaluate(phi, g));
  for (const Matrix& X : ctx.directions) {
    Matrix step = matrix_exp(h * X);
    Matrix back = matrix_exp(-h * X);
    Complex plus = evaluate(f, evaluate(phi, Matrix(g * step)));
    Complex minus = evaluate(f, evaluate(phi, Matrix(g * back)));
    acc += (plus - 2.0 * center + minus) / (h * h);
  }
  return acc;
}

/// Nested second differences: the numeric realization of tau(tau(f . phi)).
inline Complex numeric_tau_nested(const LogPolynomial& f, const MatrixPolynomial& phi, const Matrix& g,
                                  const OperatorContext& ctx, double h) {
  Complex center = numeric_tau(f, phi, g, ctx, h);
  Complex acc(0, 0);
  for (const Matrix& X : ctx.directions) {
    Matrix step = matrix_exp(h * X);
    Matrix back = matrix_exp(-h * X);
    Complex plus = numeric_tau(f, phi, Matrix(g * step), ctx, h);
    Complex minus = numeric_tau(f, phi, Matrix(g * back), ctx, h);
    acc += (plus - 2.0 * center + minus) / (h * h);
  }
  return acc;
}

/// Central-difference check of the reduced operator itself: compares the
/// coefficient algebra of apply_L against mu z^2 f'' + lambda z f' formed
/// numerically from evaluate().  Runs in the z plane, so it covers constant
/// pairs (the lambda = mu branch included) that no group-level inner
/// function realizes.
inline double numeric_L_crosscheck(const LogPolynomial& f, const EigenSpec& spec, std::uint64_t seed,
                                   int samples, double h = 1e-5) {
  LogPolynomial Lf = apply_L(f, spec);
  CoeffStream stream(seed, 0x4c31, 0);
  double worst = 0.0;
  int accepted = 0;
  int rejects = 0;
  while (accepted < samples) {
    Complex z(0.3 + 2.0 * stream.next_unit(), stream.next_symmetric());
    if (!detail::branch_safe(z) || !detail::branch_safe(z + h) || !detail::branch_safe(z - h)) {
      if (++rejects > 100)
        throw Error(ErrorKind::DegenerateSample, "numeric_L_crosscheck: no branch-safe sample points");
      continue;
    }
    ++accepted;
    Complex fp = evaluate(f, z + h), f0 = evaluate(f, z), fm = evaluate(f, z - h);
    Complex d1 = (fp - fm) / (2.0 * h);
    Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
    Complex numeric = spec.mu * z * z * d2 + spec.lambda * z * d1;
    Complex expected = evaluate(Lf, z);
    worst = std::max(worst, std::abs(numeric - expected) / std::max(1.0, std::abs(expected)));
  }
  return worst;
}

struct CrosscheckReport {
  double max_rel_dev = 0.0;
  int samples = 0;
};

/// Compares numeric tau of f(phi(.)) against the symbolic (L f)(phi(.)) that
/// the chain rule predicts when phi has the given constants under the
/// context.  Deviations are relative to max(1, |expected|).
inline CrosscheckReport numeric_crosscheck(const LogPolynomial& f, const MatrixPolynomial& phi,
                                           const OperatorContext& ctx, const EigenSpec& spec,
                                           const Sampling& s, double h = 1e-4) {
  LogPolynomial Lf = apply_L(f, spec);
  CrosscheckReport rep;
  rep.samples = s.samples;
  for (const Matrix& g : draw_branch_safe_points(phi, s)) {
    Complex expected = evaluate(Lf, evaluate(phi, g));
    Complex numeric = numeric_tau(f, phi, g, ctx, h);
    rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(numeric - expected) / std::max(1.0, std::abs(expected)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Textual form: "(c) * z^(a) * log^b(z)" terms joined by " + ", in canonical
// order; unit factors are omitted (no z part when a = 0, no log when b = 0).

inline std::string to_string(const LogPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    out += detail::complex_literal(c);
    if (key.a != Complex(0, 0)) out += " * z^" + detail::complex_literal(key.a);
    if (key.b > 0) out += " * log^" + std::to_string(key.b) + "(z)";
  }
  return out;
}

inline LogPolynomial parse_log_polynomial(const std::string& text) {
  detail::Scanner s(text);
  LogPolynomial f;
  s.skip_ws();
  if (s.accept('0') && s.done()) return f;
  while (true) {
    Complex c = s.complex_value("log-polynomial coefficient");
    Complex a(0, 0);
    int b = 0;
    while (s.accept('*')) {
      if (s.accept_word("z^")) {
        a = s.complex_value("exponent");
      } else if (s.accept_word("log^")) {
        b = static_cast<int>(s.integer("log power"));
        s.expect('(', "log argument");
        s.expect('z', "log argument");
        s.expect(')', "log argument");
      } else {
        throw Error(ErrorKind::InvalidArgument, "parse error: expected z^ or log^ factor");
      }
    }
    f.add_term(a, b, c);
    if (s.done()) break;
    s.expect('+', "term separator");
  }
  f.sweep();
  return f;
}

}  // namespace ghlab
