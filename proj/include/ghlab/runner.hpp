#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "ghlab/compose.hpp"
#include "ghlab/duality.hpp"
#include "ghlab/pharmonic.hpp"
#include "ghlab/report.hpp"

namespace ghlab {

namespace detail {

inline std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

inline std::string fmt(Complex z) {
  if (std::abs(z.imag()) < 1e-9) return fmt(z.real());
  char b[80];
  std::snprintf(b, sizeof b, "%.3g%+.3gi", z.real(), z.imag());
  return b;
}

inline MemberPolynomial member_power(std::size_t arity, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(arity, 0);
  e[index] = power;
  return MemberPolynomial::monomial(arity, e);
}

inline Json est_json(const EigenEstimate& est) {
  Json j;
  j["lambda"] = complex_json(est.lambda_mean);
  j["lambda_max_dev"] = est.lambda_max_dev;
  j["mu"] = complex_json(est.mu_mean);
  j["mu_max_dev"] = est.mu_max_dev;
  j["samples"] = est.samples;
  return j;
}

}  // namespace detail

inline LieAlgebraBasis basis_for(GroupKind kind, int n) {
  return kind == GroupKind::Unitary ? build_unitary_basis(n) : build_sp_basis(n);
}

inline double casimir_constant(GroupKind kind, int n) {
  return kind == GroupKind::Unitary ? static_cast<double>(n) : (2.0 * n + 1.0) / 2.0;
}

inline EigenFamily family_for(GroupKind kind, int p, int q) {
  return kind == GroupKind::Unitary ? complex_family(p, q) : quaternionic_family(p, q);
}

inline void add_finding(Report& rep, std::string id, bool ok, std::string detail, Json data,
                        Verdict on_miss = Verdict::Fail) {
  rep.findings.push_back({std::move(id), ok ? Verdict::Pass : on_miss, std::move(detail), std::move(data)});
}

/// Eigen-ness is a certified fact (FAIL when it breaks); agreement with the
/// claimed constants is reporting only, so a mismatch stays WARN and the
/// measurement stands.
inline void add_estimate_findings(Report& rep, const std::string& prefix, const EigenEstimate& est,
                                  Complex claimed_lambda, Complex claimed_mu, double tol) {
  add_finding(rep, prefix + ".eigen", est.is_eigen(tol),
              "ratio spread: lambda " + detail::fmt(est.lambda_max_dev) + ", mu " +
                  detail::fmt(est.mu_max_dev) + " over " + std::to_string(est.samples) + " points",
              detail::est_json(est));
  double l_dev = std::abs(est.lambda_mean - claimed_lambda) / std::max(1.0, std::abs(claimed_lambda));
  double m_dev = std::abs(est.mu_mean - claimed_mu) / std::max(1.0, std::abs(claimed_mu));
  Json data;
  data["measured_lambda"] = complex_json(est.lambda_mean);
  data["claimed_lambda"] = complex_json(claimed_lambda);
  data["measured_mu"] = complex_json(est.mu_mean);
  data["claimed_mu"] = complex_json(claimed_mu);
  bool l_ok = l_dev < tol, m_ok = m_dev < tol;
  std::string verdict_text =
      l_ok && m_ok
          ? "measured (lambda, mu) = (" + detail::fmt(est.lambda_mean) + ", " + detail::fmt(est.mu_mean) +
                ") matches the claim"
          : "measured (" + detail::fmt(est.lambda_mean) + ", " + detail::fmt(est.mu_mean) +
                ") differs from claimed (" + detail::fmt(claimed_lambda) + ", " + detail::fmt(claimed_mu) +
                "); the measurement stands";
  add_finding(rep, prefix + ".claim", l_ok && m_ok, verdict_text, std::move(data), Verdict::Warn);
}

// ---------------------------------------------------------------------------

inline void run_basis_check(const RunConfig& cfg, Report& rep) {
  int n = cfg.n > 0 ? cfg.n : cfg.p + cfg.q;
  LieAlgebraBasis basis = basis_for(cfg.group, n);
  int expected_dim = cfg.group == GroupKind::Unitary ? n * n : n * (2 * n + 1);

  add_finding(rep, "basis.dimension", basis.dimension() == expected_dim,
              std::to_string(basis.dimension()) + " elements (expected " + std::to_string(expected_dim) + ")",
              Json{{"dimension", basis.dimension()}, {"expected", expected_dim}, {"ambient", basis.ambient}});

  double orth = orthonormality_defect(basis.elements);
  add_finding(rep, "basis.orthonormal", orth < cfg.tol.algebra,
              "max pairing defect " + detail::fmt(orth), Json{{"defect", orth}});

  double closure = bracket_closure_defect(basis.elements);
  add_finding(rep, "basis.bracket_closure", closure < cfg.tol.algebra,
              "max bracket projection residual " + detail::fmt(closure), Json{{"defect", closure}});

  double structure = 0.0;
  for (const Matrix& X : basis.elements) {
    structure = std::max(structure, antihermitian_defect(X));
    if (cfg.group == GroupKind::CompactSymplectic)
      structure = std::max(structure, quaternionic_structure_defect(X));
  }
  add_finding(rep, "basis.structure", structure < cfg.tol.algebra,
              "max structure-equation defect " + detail::fmt(structure), Json{{"defect", structure}});

  double c = casimir_constant(cfg.group, n);
  Matrix cas = casimir_sum(basis);
  Matrix dev = cas + c * Matrix::Identity(basis.ambient, basis.ambient);
  double worst = dev.cwiseAbs().maxCoeff();
  add_finding(rep, "basis.casimir", worst < cfg.tol.algebra,
              "sum of squared basis fields = -" + detail::fmt(c) + " I, max entry deviation " + detail::fmt(worst),
              Json{{"constant", -c}, {"max_entry_dev", worst}});
}

inline void run_lemma_check(const RunConfig& cfg, Report& rep) {
  int n = cfg.n > 0 ? cfg.n : cfg.p + cfg.q;
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "lemma-check: n must be >= 2");
  LieAlgebraBasis basis = basis_for(cfg.group, n);
  OperatorContext ctx = full_context(basis);
  int amb = basis.ambient;
  int kappa_rows = cfg.group == GroupKind::Unitary ? amb : n;
  double tau_factor = -casimir_constant(cfg.group, n);
  double kappa_factor = cfg.group == GroupKind::Unitary ? -1.0 : -0.5;

  std::vector<MatrixPolynomial> coords;
  std::vector<std::pair<int, int>> labels;
  for (int j = 1; j <= amb; ++j)
    for (int a = 1; a <= amb; ++a) {
      coords.push_back(coefficient_function(amb, amb, j, a));
      labels.emplace_back(j, a);
    }

  double tau_res = 0.0, kappa_res = 0.0;
  for (int idx = 0; idx < cfg.samples; ++idx) {
    Matrix g = sample_group_point(basis, cfg.seed, static_cast<std::uint64_t>(idx));
    JetFrame frame(g, ctx);
    std::vector<std::vector<Complex>> grads(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      grads[i] = gradient_components(coords[i], frame);
      Complex tau = tau_at(coords[i], frame);
      auto [j, a] = labels[i];
      tau_res = std::max(tau_res, std::abs(tau - tau_factor * g(j - 1, a - 1)));
    }
    for (std::size_t i1 = 0; i1 < coords.size(); ++i1) {
      auto [j, a] = labels[i1];
      if (j > kappa_rows) continue;
      for (std::size_t i2 = i1; i2 < coords.size(); ++i2) {
        auto [k, b] = labels[i2];
        if (k > kappa_rows) continue;
        Complex kappa(0, 0);
        for (std::size_t d = 0; d < grads[i1].size(); ++d) kappa += grads[i1][d] * grads[i2][d];
        Complex expected = kappa_factor * g(j - 1, b - 1) * g(k - 1, a - 1);
        kappa_res = std::max(kappa_res, std::abs(kappa - expected));
      }
    }
  }

  add_finding(rep, "lemma.tau", tau_res < cfg.tol.morphism,
              "tau of every coordinate = " + detail::fmt(tau_factor) + " * coordinate, max residual " +
                  detail::fmt(tau_res),
              Json{{"factor", tau_factor}, {"max_residual", tau_res}, {"samples", cfg.samples}});
  add_finding(rep, "lemma.kappa", kappa_res < cfg.tol.morphism,
              "kappa(coord, coord) = " + detail::fmt(kappa_factor) +
                  " * swapped product, max residual " + detail::fmt(kappa_res),
              Json{{"factor", kappa_factor}, {"max_residual", kappa_res}, {"rows_tested", kappa_rows}});
}

inline void run_family_verify(const RunConfig& cfg, Report& rep) {
  EigenFamily fam = family_for(cfg.group, cfg.p, cfg.q);
  LieAlgebraBasis basis = basis_for(cfg.group, cfg.p + cfg.q);
  OperatorContext ctx = full_context(basis);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);
  EigenEstimate est = estimate_eigenvalues(fam.members, ctx, s);
  add_estimate_findings(rep, "family", est, fam.claimed_lambda, fam.claimed_mu, cfg.tol.eigen);
}

inline void run_composite_verify(const RunConfig& cfg, Report& rep) {
  EigenFamily fam = family_for(cfg.group, cfg.p, cfg.q);
  LieAlgebraBasis basis = basis_for(cfg.group, cfg.p + cfg.q);
  OperatorContext ctx = full_context(basis);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);

  EigenEstimate base = estimate_eigenvalues(fam.members, ctx, s);
  add_finding(rep, "composite.base_eigen", base.is_eigen(cfg.tol.eigen),
              "base family ratio spread: lambda " + detail::fmt(base.lambda_max_dev) + ", mu " +
                  detail::fmt(base.mu_max_dev),
              detail::est_json(base));

  std::vector<MemberPolynomial> generators = all_degree_monomials(fam.members.size(), cfg.degree);
  CompositeFamily comp = build_composites(fam, cfg.degree, generators, base.lambda_mean, base.mu_mean, true);
  EigenEstimate est = estimate_eigenvalues(comp.members, ctx, s);

  add_finding(rep, "composite.eigen", est.is_eigen(cfg.tol.eigen),
              std::to_string(comp.members.size()) + " degree-" + std::to_string(cfg.degree) +
                  " monomials in the base members; ratio spread: lambda " + detail::fmt(est.lambda_max_dev) +
                  ", mu " + detail::fmt(est.mu_max_dev),
              detail::est_json(est));

  double l_dev = std::abs(est.lambda_mean - comp.derived_lambda) / std::max(1.0, std::abs(comp.derived_lambda));
  double m_dev = std::abs(est.mu_mean - comp.derived_mu) / std::max(1.0, std::abs(comp.derived_mu));
  Json data;
  data["degree"] = cfg.degree;
  data["derived_lambda"] = complex_json(comp.derived_lambda);
  data["measured_lambda"] = complex_json(est.lambda_mean);
  data["derived_mu"] = complex_json(comp.derived_mu);
  data["measured_mu"] = complex_json(est.mu_mean);
  data["relative_dev"] = Json::array({l_dev, m_dev});
  add_finding(rep, "composite.scaling_law", l_dev < cfg.tol.eigen && m_dev < cfg.tol.eigen,
              "measured (" + detail::fmt(est.lambda_mean) + ", " + detail::fmt(est.mu_mean) +
                  ") vs d*lambda + d(d-1)*mu, d^2*mu = (" + detail::fmt(comp.derived_lambda) + ", " +
                  detail::fmt(comp.derived_mu) + ")",
              std::move(data));
}

inline void run_morphism_verify(const RunConfig& cfg, Report& rep) {
  EigenFamily fam = family_for(cfg.group, cfg.p, cfg.q);
  LieAlgebraBasis basis = basis_for(cfg.group, cfg.p + cfg.q);
  OperatorContext ctx = full_context(basis);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);
  std::size_t m = fam.members.size();
  auto pw = [&](std::size_t i, std::uint32_t d) { return detail::member_power(m, i, d); };
  std::uint32_t d = static_cast<std::uint32_t>(cfg.degree);

  RationalMap map = build_rational_morphism(fam, pw(0, d) + pw(m - 1, d), pw(1, d), s);
  MorphismReport mr = verify_harmonic_morphism(map, ctx, s);
  add_finding(rep, "morphism.tau", mr.tau_residual < cfg.tol.morphism,
              "|tau(P/Q)| max " + detail::fmt(mr.tau_residual) + " over " + std::to_string(mr.samples) +
                  " points",
              Json{{"residual", mr.tau_residual}, {"samples", mr.samples}, {"member_degree", map.member_degree}});
  add_finding(rep, "morphism.kappa", mr.kappa_residual < cfg.tol.morphism,
              "|kappa(F,F)| max " + detail::fmt(mr.kappa_residual), Json{{"residual", mr.kappa_residual}});

  RationalMap moved = mobius_transform(map, Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(3, 0));
  MorphismReport mm = verify_harmonic_morphism(moved, ctx, s);
  add_finding(rep, "morphism.mobius_closure", mm.tau_residual < cfg.tol.morphism && mm.kappa_residual < cfg.tol.morphism,
              "post-composed with (2w+1)/(w+3): residuals " + detail::fmt(mm.tau_residual) + ", " +
                  detail::fmt(mm.kappa_residual),
              Json{{"tau_residual", mm.tau_residual}, {"kappa_residual", mm.kappa_residual}});

  // A bare member is harmonic-morphism-shaped only after dividing by another
  // member of the same degree; on its own both detectors must fire.
  MatrixPolynomial one = MatrixPolynomial::constant(fam.members.front().rows, fam.members.front().cols,
                                                    Complex(1, 0));
  MorphismReport mc = verify_harmonic_morphism(fam.members.front(), one, ctx, s);
  add_finding(rep, "morphism.negative_control", mc.tau_residual > 1e-3 && mc.kappa_residual > 1e-3,
              "polynomial member alone: tau residual " + detail::fmt(mc.tau_residual) + ", kappa residual " +
                  detail::fmt(mc.kappa_residual) + " (both expected > 1e-3)",
              Json{{"tau_residual", mc.tau_residual}, {"kappa_residual", mc.kappa_residual}});
}

inline void run_quotient_verify(const RunConfig& cfg, Report& rep) {
  if (cfg.group != GroupKind::Unitary)
    throw Error(ErrorKind::InvalidArgument,
                "quotient-verify supports group u; the quaternionic members do not transform by a "
                "character under block subgroups");
  std::vector<int> blocks = cfg.flag_blocks.empty() ? std::vector<int>{cfg.p, cfg.q} : cfg.flag_blocks;
  int n = std::accumulate(blocks.begin(), blocks.end(), 0);
  int p_eff = blocks.front();
  int q_eff = n - p_eff;
  if (q_eff < 1) throw Error(ErrorKind::InvalidArgument, "quotient-verify: need at least two blocks");

  LieAlgebraBasis basis = basis_for(cfg.group, n);
  SymmetricPair pair = build_symmetric_pair(basis, blocks);
  EigenFamily fam = family_for(cfg.group, p_eff, q_eff);
  OperatorContext fctx = full_context(basis);
  OperatorContext hctx = horizontal_context(pair);
  OperatorContext vctx = vertical_context(pair);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);

  QuotientComparison qc = compare_full_vs_horizontal(fam.members.front(), pair, s, cfg.tol.morphism);
  add_finding(rep, "quotient.split", qc.split_defect_max < cfg.tol.algebra,
              "tau_full = tau_vertical + tau_horizontal, max defect " + detail::fmt(qc.split_defect_max),
              Json{{"split_defect", qc.split_defect_max},
                   {"lambda_full", complex_json(qc.lambda_full_mean)},
                   {"lambda_horizontal", complex_json(qc.lambda_horizontal_mean)}});

  InvarianceReport inv = invariance_probe(fam.members.front(), pair, s);
  bool character = !qc.invariant && inv.right_modulus < cfg.tol.morphism && inv.right_value > 1e-3;
  Json inv_data;
  inv_data["right_value"] = inv.right_value;
  inv_data["right_modulus"] = inv.right_modulus;
  inv_data["left_value"] = inv.left_value;
  inv_data["right_value_det1"] = inv.right_value_det1;
  inv_data["vertical_derivative"] = qc.k_residual_max;
  add_finding(rep, "quotient.character", character,
              "members transform by a unit character under the block subgroup: modulus defect " +
                  detail::fmt(inv.right_modulus) + ", value change " + detail::fmt(inv.right_value),
              std::move(inv_data));

  double vert_res = 0.0;
  for (int idx = 0; idx < std::min(cfg.samples, 20); ++idx) {
    Matrix g = s.point(cfg.seed, static_cast<std::uint64_t>(idx));
    Complex fg = evaluate(fam.members.front(), g);
    Complex tv = tau_at(fam.members.front(), g, vctx);
    vert_res = std::max(vert_res, std::abs(tv + static_cast<double>(p_eff) * fg) / std::max(1.0, std::abs(fg)));
  }
  add_finding(rep, "quotient.vertical_sum", vert_res < cfg.tol.morphism,
              "tau over vertical directions = -" + std::to_string(p_eff) + " * member, max residual " +
                  detail::fmt(vert_res),
              Json{{"residual", vert_res}, {"factor", -p_eff}});

  EigenEstimate est_h = estimate_eigenvalues(fam.members, hctx, s);
  Complex predicted_h(-static_cast<double>(p_eff) * q_eff, 0);
  bool h_ok = est_h.is_eigen(cfg.tol.eigen) &&
              std::abs(est_h.lambda_mean - predicted_h) < cfg.tol.eigen * std::max(1.0, std::abs(predicted_h)) &&
              std::abs(est_h.mu_mean) < cfg.tol.eigen;
  Json h_data = detail::est_json(est_h);
  h_data["predicted_lambda"] = complex_json(predicted_h);
  add_finding(rep, "quotient.horizontal_constants", h_ok,
              "horizontal constants (" + detail::fmt(est_h.lambda_mean) + ", " + detail::fmt(est_h.mu_mean) +
                  "), predicted (" + detail::fmt(predicted_h) + ", 0)",
              std::move(h_data));

  // Ratio of two members: exactly invariant under the block subgroup, and the
  // full and horizontal operators agree on it pointwise.
  std::size_t m = fam.members.size();
  RationalMap ratio = build_rational_morphism(fam, detail::member_power(m, 0, 1), detail::member_power(m, 1, 1), s);
  std::vector<Matrix> pts = draw_quotient_points(ratio.den, s, 1e-3);
  double inv_res = 0.0, tau_gap = 0.0, kappa_gap = 0.0, tau_res = 0.0, kappa_res = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Matrix& g = pts[i];
    Complex F = evaluate(ratio.num, g) / evaluate(ratio.den, g);
    double scale1 = std::max(1.0, std::abs(F));
    double scale2 = std::max(1.0, std::norm(F));
    Matrix k = sample_subgroup_point(pair, cfg.seed, static_cast<std::uint64_t>(i));
    Matrix gk = g * k;
    Complex Fk = evaluate(ratio.num, gk) / evaluate(ratio.den, gk);
    inv_res = std::max(inv_res, std::abs(Fk - F) / scale1);
    JetFrame ff(g, fctx), hf(g, hctx);
    Complex tf = rational_tau_at(ratio.num, ratio.den, ff);
    Complex th = rational_tau_at(ratio.num, ratio.den, hf);
    Complex kf = rational_kappa_at(ratio.num, ratio.den, ff);
    Complex kh = rational_kappa_at(ratio.num, ratio.den, hf);
    tau_gap = std::max(tau_gap, std::abs(tf - th) / scale1);
    kappa_gap = std::max(kappa_gap, std::abs(kf - kh) / scale2);
    tau_res = std::max(tau_res, std::abs(tf) / scale1);
    kappa_res = std::max(kappa_res, std::abs(kf) / scale2);
  }
  add_finding(rep, "quotient.ratio_invariant", inv_res < cfg.tol.morphism,
              "member ratio is invariant under the block subgroup, max change " + detail::fmt(inv_res),
              Json{{"residual", inv_res}});
  add_finding(rep, "quotient.ratio_descends", tau_gap < cfg.tol.morphism && kappa_gap < cfg.tol.morphism,
              "full vs horizontal on the ratio: tau gap " + detail::fmt(tau_gap) + ", kappa gap " +
                  detail::fmt(kappa_gap),
              Json{{"tau_gap", tau_gap}, {"kappa_gap", kappa_gap}});
  add_finding(rep, "quotient.ratio_morphism", tau_res < cfg.tol.morphism && kappa_res < cfg.tol.morphism,
              "the invariant ratio is a harmonic morphism: residuals " + detail::fmt(tau_res) + ", " +
                  detail::fmt(kappa_res),
              Json{{"tau_residual", tau_res}, {"kappa_residual", kappa_res}});

  if (blocks.size() > 2) {
    SymmetricPair two_block = build_symmetric_pair(basis, {p_eff, q_eff});
    OperatorContext h2 = horizontal_context(two_block);
    double gap = 0.0;
    for (int idx = 0; idx < std::min(cfg.samples, 20); ++idx) {
      Matrix g = s.point(cfg.seed, static_cast<std::uint64_t>(idx));
      for (const MatrixPolynomial& f : fam.members) {
        Complex a = tau_at(f, g, hctx);
        Complex b = tau_at(f, g, h2);
        gap = std::max(gap, std::abs(a - b) / std::max(1.0, std::abs(evaluate(f, g))));
      }
    }
    add_finding(rep, "quotient.flag_vs_two_block", gap < cfg.tol.morphism,
                "flag horizontal tension equals two-block horizontal tension on members, max gap " +
                    detail::fmt(gap),
                Json{{"gap", gap}, {"blocks", blocks}});
  }
}

inline void run_pharmonic_verify(const RunConfig& cfg, Report& rep) {
  int r = cfg.order;
  EigenFamily fam = family_for(cfg.group, cfg.p, cfg.q);
  LieAlgebraBasis basis = basis_for(cfg.group, cfg.p + cfg.q);
  OperatorContext ctx = full_context(basis);
  int cross_samples = std::min(cfg.samples, 20);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);
  Sampling s20 = make_group_sampling(basis, cfg.seed, cross_samples);

  EigenEstimate est = estimate_eigenvalues(fam.members, ctx, s);

  struct Case {
    const char* name;
    EigenSpec spec;
    bool group_composition;
  };
  EigenSpec generic{est.lambda_mean, est.mu_mean};
  EigenSpec mu_zero{Complex(-static_cast<double>(cfg.p) * cfg.q, 0), Complex(0, 0)};
  EigenSpec tie{fam.claimed_lambda, fam.claimed_lambda};
  std::vector<Case> cases = {{"generic", generic, true},
                             {"mu_zero", mu_zero, cfg.group == GroupKind::Unitary},
                             {"tie", tie, false}};

  for (const Case& c : cases) {
    PhiBuild build = build_phi_p(r, c.spec, Complex(1, 0), Complex(1, 0));
    ProperPHarmonicChain chain = verify_proper_pharmonic(build.phi, r, c.spec);
    bool sharp_all = true;
    for (int k = 0; k < r; ++k) sharp_all = sharp_all && !chain.chain[static_cast<std::size_t>(k)].is_zero();
    Json data;
    data["lambda"] = complex_json(c.spec.lambda);
    data["mu"] = complex_json(c.spec.mu);
    data["case"] = build.dispatch == PhiCase::MuZero ? "mu_zero"
                   : build.dispatch == PhiCase::LambdaEqualsMu ? "tie"
                                                               : "generic";
    Json profile = Json::array();
    for (const LogPolynomial& f : chain.chain) profile.push_back(f.terms().size());
    data["chain_term_counts"] = profile;
    add_finding(rep, std::string("pharmonic.") + c.name + ".chain", chain.pass() && sharp_all,
                "L^" + std::to_string(r) + " annihilates the order-" + std::to_string(r) +
                    " ansatz and every lower power does not",
                std::move(data));

    double op_dev = numeric_L_crosscheck(build.phi, c.spec, cfg.seed, cross_samples);
    add_finding(rep, std::string("pharmonic.") + c.name + ".operator", op_dev < cfg.tol.crosscheck,
                "coefficient algebra vs central differences in the plane: max relative deviation " +
                    detail::fmt(op_dev),
                Json{{"max_rel_dev", op_dev}, {"samples", cross_samples}});

    if (!c.group_composition) continue;
    if (build.dispatch == PhiCase::MuZero) {
      SymmetricPair pair = build_symmetric_pair(basis, {cfg.p, cfg.q});
      OperatorContext hctx = horizontal_context(pair);
      CrosscheckReport cc = numeric_crosscheck(build.phi, fam.members.front(), hctx, c.spec, s20, 1e-4);
      add_finding(rep, std::string("pharmonic.") + c.name + ".composition", cc.max_rel_dev < cfg.tol.crosscheck,
                  "horizontal tension of the composite vs (L f) after the inner eigenfunction: max "
                  "relative deviation " +
                      detail::fmt(cc.max_rel_dev),
                  Json{{"max_rel_dev", cc.max_rel_dev}, {"samples", cc.samples}});
    } else {
      CrosscheckReport cc = numeric_crosscheck(build.phi, fam.members.front(), ctx, c.spec, s20, 1e-4);
      add_finding(rep, std::string("pharmonic.") + c.name + ".composition", cc.max_rel_dev < cfg.tol.crosscheck,
                  "tension of the composite vs (L f) after the inner eigenfunction: max relative deviation " +
                      detail::fmt(cc.max_rel_dev),
                  Json{{"max_rel_dev", cc.max_rel_dev}, {"samples", cc.samples}});
    }
  }
}

inline void run_dual_verify(const RunConfig& cfg, Report& rep) {
  EigenFamily fam = family_for(cfg.group, cfg.p, cfg.q);
  LieAlgebraBasis basis = basis_for(cfg.group, cfg.p + cfg.q);
  OperatorContext ctx = full_context(basis);
  Sampling s = make_group_sampling(basis, cfg.seed, cfg.samples);
  EigenEstimate est = estimate_eigenvalues(fam.members, ctx, s);

  DualSetting gd = group_dual_setting(basis, cfg.seed, cfg.samples);
  DualComparison gc = compare_sign_flip(fam.members, est.lambda_mean, est.mu_mean, gd);
  Json gd_data = detail::est_json(gc.dual);
  gd_data["compact_lambda"] = complex_json(gc.compact_lambda);
  gd_data["compact_mu"] = complex_json(gc.compact_mu);
  gd_data["flip_dev"] = Json::array({gc.lambda_flip_dev, gc.mu_flip_dev});
  add_finding(rep, "dual.group_flip", gc.flips(cfg.tol.dual),
              "constants at exp(i g) points over i-scaled directions: (" + detail::fmt(gc.dual.lambda_mean) +
                  ", " + detail::fmt(gc.dual.mu_mean) + ") = -(compact) within " +
                  detail::fmt(std::max(gc.lambda_flip_dev, gc.mu_flip_dev)),
              std::move(gd_data));

  if (cfg.group == GroupKind::Unitary) {
    SymmetricPair pair = build_symmetric_pair(basis, {cfg.p, cfg.q});
    EigenEstimate est_h = estimate_eigenvalues(fam.members, horizontal_context(pair), s);
    DualSetting pd = pair_dual_setting(pair, cfg.seed, cfg.samples);
    DualComparison pc = compare_sign_flip(fam.members, est_h.lambda_mean, est_h.mu_mean, pd);
    Json pd_data = detail::est_json(pc.dual);
    pd_data["compact_lambda"] = complex_json(pc.compact_lambda);
    pd_data["compact_mu"] = complex_json(pc.compact_mu);
    pd_data["flip_dev"] = Json::array({pc.lambda_flip_dev, pc.mu_flip_dev});
    add_finding(rep, "dual.pair_flip", pc.flips(cfg.tol.dual),
                "horizontal constants flip sign at exp(K)exp(iM) points: deviation " +
                    detail::fmt(std::max(pc.lambda_flip_dev, pc.mu_flip_dev)),
                std::move(pd_data));

    RadiusProbe rp = radius_independence_probe(fam.members, pair, cfg.seed, cfg.samples);
    add_finding(rep, "dual.radius_independent", rp.lambda_gap < cfg.tol.dual && rp.mu_gap < cfg.tol.dual,
                "estimates at sampling radii 0.25 and 0.5 agree: gaps " + detail::fmt(rp.lambda_gap) + ", " +
                    detail::fmt(rp.mu_gap),
                Json{{"lambda_gap", rp.lambda_gap}, {"mu_gap", rp.mu_gap}});

    std::vector<Matrix> pts;
    for (int i = 0; i < std::min(cfg.samples, 20); ++i)
      pts.push_back(pd.sampling.point(cfg.seed, static_cast<std::uint64_t>(i)));
    double form = indefinite_form_defect(pts, cfg.p, cfg.q);
    add_finding(rep, "dual.indefinite_form", form < cfg.tol.algebra,
                "dual points preserve diag(I_p, -I_q): max defect " + detail::fmt(form),
                Json{{"defect", form}, {"points", pts.size()}});
  }

  DualSetting gd20 = group_dual_setting(basis, cfg.seed, std::min(cfg.samples, 20));
  DualPHarmonicReport dp = dual_pharmonic_verify(fam.members.front(), cfg.order,
                                                 EigenSpec{est.lambda_mean, est.mu_mean}, Complex(1, 0),
                                                 Complex(1, 0), gd20);
  add_finding(rep, "dual.pharmonic", dp.chain_pass && dp.crosscheck_dev < cfg.tol.crosscheck,
              "order-" + std::to_string(cfg.order) +
                  " construction from flipped constants: symbolic chain plus dual-point cross-check " +
                  detail::fmt(dp.crosscheck_dev),
              Json{{"crosscheck_dev", dp.crosscheck_dev}, {"samples", dp.samples}});
}

inline Report run(const RunConfig& cfg);

inline void run_sweep(const RunConfig& cfg, Report& rep) {
  struct Leaf {
    std::string prefix;
    RunConfig sub;
  };
  std::vector<Leaf> grid;
  auto add = [&](const std::string& prefix, const std::string& command, GroupKind group,
                 auto&& mutate) {
    RunConfig sub = cfg;
    sub.command = command;
    sub.group = group;
    sub.flag_blocks.clear();
    sub.n = 0;
    mutate(sub);
    grid.push_back({prefix, std::move(sub)});
  };
  auto pq = [](int p, int q) {
    return [p, q](RunConfig& c) {
      c.p = p;
      c.q = q;
    };
  };

  for (int n = 1; n <= 4; ++n)
    add("basis-check[u,n=" + std::to_string(n) + "]", "basis-check", GroupKind::Unitary,
        [n](RunConfig& c) { c.n = n; });
  for (int n = 2; n <= 3; ++n)
    add("basis-check[sp,n=" + std::to_string(n) + "]", "basis-check", GroupKind::CompactSymplectic,
        [n](RunConfig& c) { c.n = n; });
  for (int n = 2; n <= 3; ++n)
    add("lemma-check[u,n=" + std::to_string(n) + "]", "lemma-check", GroupKind::Unitary,
        [n](RunConfig& c) { c.n = n; });
  add("lemma-check[sp,n=2]", "lemma-check", GroupKind::CompactSymplectic, [](RunConfig& c) { c.n = 2; });

  add("family-verify[u,1,1]", "family-verify", GroupKind::Unitary, pq(1, 1));
  add("family-verify[u,1,2]", "family-verify", GroupKind::Unitary, pq(1, 2));
  add("family-verify[u,2,2]", "family-verify", GroupKind::Unitary, pq(2, 2));
  add("family-verify[sp,1,1]", "family-verify", GroupKind::CompactSymplectic, pq(1, 1));
  add("family-verify[sp,1,2]", "family-verify", GroupKind::CompactSymplectic, pq(1, 2));

  add("composite-verify[u,1,2,d=2]", "composite-verify", GroupKind::Unitary, [&](RunConfig& c) {
    c.p = 1;
    c.q = 2;
    c.degree = 2;
  });
  add("composite-verify[u,1,2,d=3]", "composite-verify", GroupKind::Unitary, [&](RunConfig& c) {
    c.p = 1;
    c.q = 2;
    c.degree = 3;
  });

  add("morphism-verify[u,1,1,d=1]", "morphism-verify", GroupKind::Unitary, [&](RunConfig& c) {
    c.p = 1;
    c.q = 1;
    c.degree = 1;
  });
  add("morphism-verify[u,2,2,d=1]", "morphism-verify", GroupKind::Unitary, [&](RunConfig& c) {
    c.p = 2;
    c.q = 2;
    c.degree = 1;
  });

  add("quotient-verify[u,2,2]", "quotient-verify", GroupKind::Unitary, pq(2, 2));
  add("quotient-verify[u,1+1+2]", "quotient-verify", GroupKind::Unitary,
      [](RunConfig& c) { c.flag_blocks = {1, 1, 2}; });

  add("pharmonic-verify[u,1,2,r=3]", "pharmonic-verify", GroupKind::Unitary, [&](RunConfig& c) {
    c.p = 1;
    c.q = 2;
    c.order = 3;
  });

  add("dual-verify[u,1,1]", "dual-verify", GroupKind::Unitary, pq(1, 1));
  add("dual-verify[u,1,2]", "dual-verify", GroupKind::Unitary, pq(1, 2));
  add("dual-verify[sp,1,1]", "dual-verify", GroupKind::CompactSymplectic, pq(1, 1));

  for (const Leaf& leaf : grid) {
    Report sub = run(leaf.sub);
    for (Finding& f : sub.findings) {
      f.id = leaf.prefix + "/" + f.id;
      rep.findings.push_back(std::move(f));
    }
    if (sub.degenerate) {
      rep.degenerate = true;
      if (!rep.degeneracy_note.empty()) rep.degeneracy_note += "; ";
      rep.degeneracy_note += leaf.prefix + ": " + sub.degeneracy_note;
    }
  }
}

inline Report run(const RunConfig& cfg) {
  validate_config(cfg);
  Report rep;
  rep.command = cfg.command;
  rep.config_echo = config_json(cfg);
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (cfg.command == "basis-check")
      run_basis_check(cfg, rep);
    else if (cfg.command == "lemma-check")
      run_lemma_check(cfg, rep);
    else if (cfg.command == "family-verify")
      run_family_verify(cfg, rep);
    else if (cfg.command == "composite-verify")
      run_composite_verify(cfg, rep);
    else if (cfg.command == "morphism-verify")
      run_morphism_verify(cfg, rep);
    else if (cfg.command == "quotient-verify")
      run_quotient_verify(cfg, rep);
    else if (cfg.command == "pharmonic-verify")
      run_pharmonic_verify(cfg, rep);
    else if (cfg.command == "dual-verify")
      run_dual_verify(cfg, rep);
    else if (cfg.command == "sweep")
      run_sweep(cfg, rep);
    else
      throw Error(ErrorKind::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateSample) throw;
    rep.degenerate = true;
    rep.degeneracy_note = e.what();
  }
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ghlab
