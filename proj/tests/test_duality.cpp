#include <catch2/catch_amalgamated.hpp>

#include "ghlab/duality.hpp"

using namespace ghlab;

TEST_CASE("group-dual estimates flip the full constants") {
  EigenFamily fam = complex_family(1, 1);
  LieAlgebraBasis basis = build_unitary_basis(2);
  DualSetting dual = group_dual_setting(basis, 42, 20);
  DualComparison cmp = compare_sign_flip(fam.members, Complex(-2, 0), Complex(-1, 0), dual);
  CHECK(cmp.flips(1e-9));
  CHECK(std::abs(cmp.dual.lambda_mean - Complex(2, 0)) < 1e-9);
  CHECK(std::abs(cmp.dual.mu_mean - Complex(1, 0)) < 1e-9);
}

TEST_CASE("pair-dual estimates flip the horizontal constants") {
  EigenFamily fam = complex_family(1, 2);
  LieAlgebraBasis basis = build_unitary_basis(3);
  SymmetricPair pair = build_symmetric_pair(basis, {1, 2});
  DualSetting dual = pair_dual_setting(pair, 42, 20);
  // horizontal constants of the two-block quotient: (-p q, 0)
  DualComparison cmp = compare_sign_flip(fam.members, Complex(-2, 0), Complex(0, 0), dual);
  CHECK(cmp.flips(1e-9));
}

TEST_CASE("pair-dual points preserve the indefinite form and leave the group") {
  LieAlgebraBasis basis = build_unitary_basis(3);
  SymmetricPair pair = build_symmetric_pair(basis, {1, 2});
  DualSetting dual = pair_dual_setting(pair, 42, 25);

  std::vector<Matrix> points;
  for (int i = 0; i < 25; ++i) points.push_back(dual.sampling.point(dual.sampling.seed, i));
  CHECK(indefinite_form_defect(points, 1, 2) < 1e-10);

  bool any_nonunitary = false;
  for (const Matrix& g : points) {
    if (unitarity_defect(g) > 1e-6) any_nonunitary = true;
    // the top-left entry follows a cosh pattern, so it cannot dip below 1
    CHECK(std::abs(g(0, 0)) >= 1.0 - 1e-12);
  }
  CHECK(any_nonunitary);
}

TEST_CASE("flipped estimates do not depend on the sampling radius") {
  EigenFamily fam = complex_family(1, 1);
  LieAlgebraBasis basis = build_unitary_basis(2);
  SymmetricPair pair = build_symmetric_pair(basis, {1, 1});
  RadiusProbe probe = radius_independence_probe(fam.members, pair, 42, 15);
  CHECK(probe.lambda_gap < 1e-10);
  CHECK(probe.mu_gap < 1e-10);
}

TEST_CASE("sign-flipped tension holds pointwise on the dual side") {
  EigenFamily fam = complex_family(1, 2);
  LieAlgebraBasis basis = build_unitary_basis(3);
  OperatorContext ctx = dual_group_context(basis);
  Sampling s = make_group_dual_sampling(basis, 42, 10);
  for (int i = 0; i < 10; ++i) {
    JetFrame frame(s.point(s.seed, i), ctx);
    for (const MatrixPolynomial& f : fam.members) {
      Complex tau = tau_at(f, frame);
      Complex expect = Complex(3, 0) * evaluate(f, frame.g);  // -lambda, lambda = -p(q+1)
      CHECK(std::abs(tau - expect) < 1e-9);
    }
  }
}

TEST_CASE("proper p-harmonic ansatz survives the flip") {
  EigenFamily fam = complex_family(1, 1);
  LieAlgebraBasis basis = build_unitary_basis(2);
  DualSetting dual = group_dual_setting(basis, 42, 12);
  EigenSpec compact{Complex(-2, 0), Complex(-1, 0)};
  for (int p = 2; p <= 3; ++p) {
    DualPHarmonicReport rep =
        dual_pharmonic_verify(fam.members.front(), p, compact, Complex(1, 0), Complex(1, 0), dual);
    CHECK(rep.dispatch == PhiCase::Generic);
    CHECK(rep.chain_pass);
    CHECK(rep.crosscheck_dev < 1e-4);
    CHECK(rep.samples > 0);
  }
}
