#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ghlab/families.hpp"

namespace ghlab {

/// Polynomial in the members of a family, kept in abstract form (exponent
/// vectors over the member list) so homogeneity can be checked and scaling
/// laws evaluated without touching matrix entries.
struct MemberPolynomial {
  std::size_t arity = 0;
  std::map<std::vector<std::uint32_t>, Complex> terms;

  static MemberPolynomial monomial(std::size_t arity, const std::vector<std::uint32_t>& exponents,
                                   Complex c = Complex(1, 0)) {
    if (exponents.size() != arity)
      throw Error(ErrorKind::ShapeMismatch, "MemberPolynomial: exponent vector length differs from arity");
    MemberPolynomial f;
    f.arity = arity;
    if (c != Complex(0, 0)) f.terms[exponents] = c;
    return f;
  }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
      int total = 0;
      for (std::uint32_t x : e) total += static_cast<int>(x);
      d = std::max(d, total);
    }
    return d;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
      int total = 0;
      for (std::uint32_t x : e) total += static_cast<int>(x);
      if (d < 0) d = total;
      if (total != d) return false;
    }
    return true;
  }

  bool is_zero() const { return terms.empty(); }

  Complex eval(const std::vector<Complex>& values) const {
    if (values.size() != arity)
      throw Error(ErrorKind::ShapeMismatch, "MemberPolynomial::eval: wrong value count");
    Complex acc(0, 0);
    for (const auto& [e, c] : terms) {
      Complex prod = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) prod *= values[i];
      acc += prod;
    }
    return acc;
  }

  /// Expansion into a concrete polynomial in matrix entries.
  MatrixPolynomial expand(const std::vector<MatrixPolynomial>& members) const {
    if (members.size() != arity)
      throw Error(ErrorKind::ShapeMismatch, "MemberPolynomial::expand: wrong member count");
    if (members.empty()) throw Error(ErrorKind::InvalidArgument, "MemberPolynomial::expand: no members");
    MatrixPolynomial acc = MatrixPolynomial::zero(members.front().rows, members.front().cols);
    for (const auto& [e, c] : terms) {
      MatrixPolynomial prod = MatrixPolynomial::constant(acc.rows, acc.cols, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) prod = prod * members[i];
      acc = acc + prod;
    }
    return acc;
  }
};

inline MemberPolynomial operator+(const MemberPolynomial& f, const MemberPolynomial& h) {
  if (f.arity != h.arity) throw Error(ErrorKind::ShapeMismatch, "MemberPolynomial: arity mismatch");
  MemberPolynomial out = f;
  for (const auto& [e, c] : h.terms) {
    out.terms[e] += c;
    if (out.terms[e] == Complex(0, 0)) out.terms.erase(e);
  }
  return out;
}

inline MemberPolynomial operator*(Complex s, const MemberPolynomial& f) {
  MemberPolynomial out;
  out.arity = f.arity;
  if (s == Complex(0, 0)) return out;
  for (const auto& [e, c] : f.terms) out.terms[e] = s * c;
  return out;
}

/// All exponent vectors of total degree d over `arity` slots, lexicographic.
inline std::vector<MemberPolynomial> all_degree_monomials(std::size_t arity, int d) {
  if (arity == 0 || d < 1) throw Error(ErrorKind::InvalidArgument, "all_degree_monomials: need arity >= 1, d >= 1");
  std::vector<MemberPolynomial> out;
  std::vector<std::uint32_t> e(arity, 0);
  auto rec = [&](auto&& self, std::size_t slot, int remaining) -> void {
    if (slot + 1 == arity) {
      e[slot] = static_cast<std::uint32_t>(remaining);
      out.push_back(MemberPolynomial::monomial(arity, e));
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[slot] = static_cast<std::uint32_t>(k);
      self(self, slot + 1, remaining - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Homogeneous composites of a base family, with the quadratic rescaling of
/// the constants: lambda_d = d lambda + d(d-1) mu and mu_d = d^2 mu.  The
/// base constants are passed in explicitly so callers choose claimed or
/// measured ones; the flag records which was used.
struct CompositeFamily {
  int degree = 0;
  bool constants_from_measurement = false;
  std::vector<MemberPolynomial> generators;
  std::vector<MatrixPolynomial> members;
  Complex base_lambda{0, 0};
  Complex base_mu{0, 0};
  Complex derived_lambda{0, 0};
  Complex derived_mu{0, 0};
};

inline CompositeFamily build_composites(const EigenFamily& base, int degree,
                                        const std::vector<MemberPolynomial>& generators,
                                        Complex base_lambda, Complex base_mu,
                                        bool constants_from_measurement) {
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "build_composites: degree must be >= 1");
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "build_composites: no generators");
  CompositeFamily fam;
  fam.degree = degree;
  fam.constants_from_measurement = constants_from_measurement;
  fam.base_lambda = base_lambda;
  fam.base_mu = base_mu;
  for (const MemberPolynomial& gen : generators) {
    if (gen.is_zero() || !gen.is_homogeneous() || gen.degree() != degree)
      throw Error(ErrorKind::NotHomogeneous, "build_composites: generator not homogeneous of the stated degree");
    fam.generators.push_back(gen);
    fam.members.push_back(gen.expand(base.members));
  }
  double d = degree;
  fam.derived_lambda = d * base_lambda + d * (d - 1) * base_mu;
  fam.derived_mu = d * d * base_mu;
  return fam;
}

// ---------------------------------------------------------------------------
// Rational maps P/Q and the quotient-rule assembly of their tension and
// conformality values from the jets of numerator and denominator.  No
// symbolic division happens anywhere; every quantity is a pointwise exact
// combination of polynomial jets.

struct RationalMap {
  MemberPolynomial num_form;
  MemberPolynomial den_form;
  MatrixPolynomial num;
  MatrixPolynomial den;
  int member_degree = 0;
};

/// tau(P/Q) = tau(P)/Q - 2 kappa(P,Q)/Q^2 - P tau(Q)/Q^2 + 2 P kappa(Q,Q)/Q^3.
inline Complex rational_tau_at(const MatrixPolynomial& num, const MatrixPolynomial& den,
                               const JetFrame& frame) {
  Complex p = evaluate(num, frame.g);
  Complex q = evaluate(den, frame.g);
  Complex tau_p(0, 0), tau_q(0, 0), kpq(0, 0), kqq(0, 0);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Jet2 jp = jet_at(num, frame, i);
    Jet2 jq = jet_at(den, frame, i);
    tau_p += 2.0 * jp.d2;
    tau_q += 2.0 * jq.d2;
    kpq += jp.d1 * jq.d1;
    kqq += jq.d1 * jq.d1;
  }
  return tau_p / q - 2.0 * kpq / (q * q) - p * tau_q / (q * q) + 2.0 * p * kqq / (q * q * q);
}

/// kappa(P/Q, P/Q) = (kappa(P,P) Q^2 - 2 P Q kappa(P,Q) + P^2 kappa(Q,Q)) / Q^4.
inline Complex rational_kappa_at(const MatrixPolynomial& num, const MatrixPolynomial& den,
                                 const JetFrame& frame) {
  Complex p = evaluate(num, frame.g);
  Complex q = evaluate(den, frame.g);
  Complex kpp(0, 0), kpq(0, 0), kqq(0, 0);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Complex dp = jet_at(num, frame, i).d1;
    Complex dq = jet_at(den, frame, i).d1;
    kpp += dp * dp;
    kpq += dp * dq;
    kqq += dq * dq;
  }
  Complex q2 = q * q;
  return (kpp * q2 - 2.0 * p * q * kpq + p * p * kqq) / (q2 * q2);
}

/// Derivative of P/Q along one frame direction: (Q dP - P dQ)/Q^2.
inline Complex rational_d1_at(const MatrixPolynomial& num, const MatrixPolynomial& den,
                              const JetFrame& frame, std::size_t i) {
  Complex p = evaluate(num, frame.g);
  Complex q = evaluate(den, frame.g);
  return (q * jet_at(num, frame, i).d1 - p * jet_at(den, frame, i).d1) / (q * q);
}

/// Points where |den| clears the quotient floor (1e-3 by default, far above
/// the eigen floor: the assembly divides by Q^3, so conditioning matters).
inline std::vector<Matrix> draw_quotient_points(const MatrixPolynomial& den, const Sampling& s,
                                                double den_floor) {
  Sampling local = s;
  local.floor_abs = den_floor;
  return draw_admissible_points({den}, local);
}

inline RationalMap build_rational_morphism(const EigenFamily& base, const MemberPolynomial& num_form,
                                           const MemberPolynomial& den_form, const Sampling& s,
                                           double den_floor = 1e-3) {
  if (!num_form.is_homogeneous() || !den_form.is_homogeneous() || num_form.is_zero() || den_form.is_zero())
    throw Error(ErrorKind::NotHomogeneous, "build_rational_morphism: forms must be homogeneous and nonzero");
  if (num_form.degree() != den_form.degree())
    throw Error(ErrorKind::DegreeMismatch, "build_rational_morphism: numerator and denominator degree differ");

  RationalMap map;
  map.num_form = num_form;
  map.den_form = den_form;
  map.member_degree = num_form.degree();
  map.num = num_form.expand(base.members);
  map.den = den_form.expand(base.members);

  // Independence: the ratio must actually vary.  A constant ratio means the
  // pair spans a one-dimensional space and the map degenerates to a point.
  std::vector<Complex> ratios;
  for (const Matrix& g : draw_quotient_points(map.den, s, den_floor))
    ratios.push_back(evaluate(map.num, g) / evaluate(map.den, g));
  Complex mean(0, 0);
  for (Complex r : ratios) mean += r;
  mean /= Complex(static_cast<double>(ratios.size()), 0);
  double spread = 0.0;
  for (Complex r : ratios) spread = std::max(spread, std::abs(r - mean));
  if (spread < 1e-10)
    throw Error(ErrorKind::DependentPair, "build_rational_morphism: ratio constant across samples");
  return map;
}

/// Measured harmonic-morphism residuals: max over samples of |tau(P/Q)| and
/// |kappa(P/Q, P/Q)|, each normalized by max(1, |P/Q|^2).
struct MorphismReport {
  double tau_residual = 0.0;
  double kappa_residual = 0.0;
  int samples = 0;
};

inline MorphismReport verify_harmonic_morphism(const MatrixPolynomial& num, const MatrixPolynomial& den,
                                               const OperatorContext& ctx, const Sampling& s,
                                               double den_floor = 1e-3) {
  MorphismReport rep;
  rep.samples = s.samples;
  for (const Matrix& g : draw_quotient_points(den, s, den_floor)) {
    JetFrame frame(g, ctx);
    Complex value = evaluate(num, g) / evaluate(den, g);
    double scale = std::max(1.0, std::norm(value));
    rep.tau_residual = std::max(rep.tau_residual, std::abs(rational_tau_at(num, den, frame)) / scale);
    rep.kappa_residual = std::max(rep.kappa_residual, std::abs(rational_kappa_at(num, den, frame)) / scale);
  }
  return rep;
}

inline MorphismReport verify_harmonic_morphism(const RationalMap& map, const OperatorContext& ctx,
                                               const Sampling& s, double den_floor = 1e-3) {
  return verify_harmonic_morphism(map.num, map.den, ctx, s, den_floor);
}

/// Post-composition with (a F + b)/(c F + d); closure holds because the new
/// numerator and denominator stay homogeneous of the same member degree.
inline RationalMap mobius_transform(const RationalMap& map, Complex a, Complex b, Complex c, Complex d) {
  if (a * d - b * c == Complex(0, 0))
    throw Error(ErrorKind::InvalidArgument, "mobius_transform: singular coefficient matrix");
  RationalMap out;
  out.num_form = a * map.num_form + b * map.den_form;
  out.den_form = c * map.num_form + d * map.den_form;
  out.num = a * map.num + b * map.den;
  out.den = c * map.num + d * map.den;
  out.member_degree = map.member_degree;
  if (out.num_form.is_zero() || out.den_form.is_zero())
    throw Error(ErrorKind::DependentPair, "mobius_transform: transformed pair collapsed");
  return out;
}

}  // namespace ghlab
