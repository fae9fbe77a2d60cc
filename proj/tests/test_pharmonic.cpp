#include <catch2/catch_amalgamated.hpp>

#include "ghlab/families.hpp"
#include "ghlab/pharmonic.hpp"

using namespace ghlab;

TEST_CASE("log-polynomial terms merge nearby exponents and sweep dust") {
  LogPolynomial f;
  f.add_term(Complex(1, 0), 2, Complex(1, 0));
  f.add_term(Complex(1 + 1e-13, 0), 2, Complex(2, 0));
  CHECK(f.terms().size() == 1);
  CHECK(f.terms().begin()->second == Complex(3, 0));

  f.add_term(Complex(0, 0), 0, Complex(1e-15, 0));
  f.sweep();
  CHECK(f.terms().size() == 1);

  CHECK_THROWS_AS(f.add_term(Complex(0, 0), 65, Complex(1, 0)), Error);
  CHECK_THROWS_AS(f.add_term(Complex(0, 0), -1, Complex(1, 0)), Error);
}

TEST_CASE("the reduced operator acts term by term") {
  EigenSpec spec{Complex(-2, 0), Complex(-1, 0)};  // rank-one minor constants

  LogPolynomial f;
  f.add_term(Complex(-1, 0), 1, Complex(1, 0));
  LogPolynomial Lf = apply_L(f, spec);
  REQUIRE(Lf.terms().size() == 1);
  CHECK(Lf.terms().begin()->first.b == 0);
  CHECK(std::abs(Lf.terms().begin()->first.a - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(Lf.terms().begin()->second - Complex(1, 0)) < 1e-14);

  LogPolynomial L2f = apply_L(Lf, spec);
  CHECK(L2f.is_zero());
}

TEST_CASE("ansatz dispatch covers the three constant patterns") {
  SECTION("mu = 0") {
    PhiBuild b = build_phi_p(3, {Complex(-3, 0), Complex(0, 0)}, Complex(1, 0), Complex(0, 0));
    CHECK(b.dispatch == PhiCase::MuZero);
    CHECK_FALSE(b.ambiguous);
    REQUIRE(b.phi.terms().size() == 1);
    CHECK(b.phi.terms().begin()->first.b == 2);
  }
  SECTION("lambda = mu") {
    PhiBuild b = build_phi_p(3, {Complex(-2, 0), Complex(-2, 0)}, Complex(1, 0), Complex(1, 0));
    CHECK(b.dispatch == PhiCase::LambdaEqualsMu);
    CHECK(b.phi.max_log_power() == 5);
  }
  SECTION("generic") {
    PhiBuild b = build_phi_p(2, {Complex(-6, 0), Complex(-2, 0)}, Complex(1, 0), Complex(1, 0));
    CHECK(b.dispatch == PhiCase::Generic);
    REQUIRE(b.phi.terms().size() == 2);
    CHECK(std::abs(b.phi.terms().begin()->first.a - Complex(-2, 0)) < 1e-14);
  }
  SECTION("near-tie is flagged") {
    PhiBuild b = build_phi_p(2, {Complex(-2 + 1e-13, 0), Complex(-2, 0)}, Complex(1, 0), Complex(1, 0));
    CHECK(b.dispatch == PhiCase::LambdaEqualsMu);
    CHECK(b.ambiguous);
  }
  SECTION("degenerate constants are rejected") {
    CHECK_THROWS_AS(build_phi_p(2, {Complex(0, 0), Complex(0, 0)}, Complex(1, 0), Complex(1, 0)), Error);
    CHECK_THROWS_AS(build_phi_p(0, {Complex(-1, 0), Complex(0, 0)}, Complex(1, 0), Complex(1, 0)), Error);
  }
}

TEST_CASE("order-p constructions vanish at order p and at no lower order") {
  EigenSpec specs[] = {{Complex(-3, 0), Complex(0, 0)},
                       {Complex(-2, 0), Complex(-2, 0)},
                       {Complex(-6, 0), Complex(-2, 0)}};
  for (const EigenSpec& spec : specs)
    for (int p = 1; p <= 5; ++p) {
      PhiBuild b = build_phi_p(p, spec, Complex(1, 0), Complex(2, 0));
      ProperPHarmonicChain chain = verify_proper_pharmonic(b.phi, p, spec);
      REQUIRE(chain.chain.size() == static_cast<std::size_t>(p) + 1);
      CHECK(chain.pass());
      for (int k = 0; k < p; ++k) CHECK_FALSE(chain.chain[static_cast<std::size_t>(k)].is_zero());
    }
}

TEST_CASE("principal-branch evaluation") {
  LogPolynomial f;
  f.add_term(Complex(2, 0), 1, Complex(1, 0));
  CHECK(std::abs(evaluate(f, Complex(2, 0)) - 4.0 * std::log(2.0)) < 1e-14);
}

TEST_CASE("operator coefficients agree with plane finite differences") {
  EigenSpec specs[] = {{Complex(-3, 0), Complex(0, 0)},
                       {Complex(-2, 0), Complex(-2, 0)},
                       {Complex(-6, 0), Complex(-2, 0)}};
  for (const EigenSpec& spec : specs) {
    PhiBuild b = build_phi_p(3, spec, Complex(1, 0), Complex(1, 0));
    CHECK(numeric_L_crosscheck(b.phi, spec, 42, 20) < 1e-4);
  }
}

TEST_CASE("the chain rule closes the group-level composition") {
  EigenFamily fam = complex_family(1, 1);
  LieAlgebraBasis basis = build_unitary_basis(2);
  OperatorContext ctx = full_context(basis);
  Sampling s = make_group_sampling(basis, 42, 15);
  EigenSpec spec{Complex(-2, 0), Complex(-1, 0)};

  PhiBuild b = build_phi_p(2, spec, Complex(1, 0), Complex(1, 0));
  CrosscheckReport rep = numeric_crosscheck(b.phi, fam.members.front(), ctx, spec, s);
  CHECK(rep.max_rel_dev < 1e-4);

  // L^2 annihilates the order-2 ansatz, so the nested numeric tension of the
  // composite has to vanish to the accuracy of the discretization.  Nesting
  // divides the inner roundoff by h^2 and the truncation grows like |phi|^-5,
  // so use a wider step and keep away from the branch-point end of the window.
  Sampling s30 = make_group_sampling(basis, 42, 30);
  int checked = 0;
  for (const Matrix& g : draw_branch_safe_points(fam.members.front(), s30)) {
    if (std::abs(evaluate(fam.members.front(), g)) < 0.3 || checked >= 3) continue;
    ++checked;
    CHECK(std::abs(numeric_tau_nested(b.phi, fam.members.front(), g, ctx, 3e-3)) < 1e-2);
  }
  CHECK(checked >= 1);
}

TEST_CASE("log-polynomial text form round-trips") {
  PhiBuild b = build_phi_p(3, {Complex(-6, 0), Complex(-2, 0)}, Complex(1.5, -0.25), Complex(0, 2));
  LogPolynomial parsed = parse_log_polynomial(to_string(b.phi));
  REQUIRE(parsed.terms().size() == b.phi.terms().size());
  auto it = b.phi.terms().begin();
  for (const auto& [key, c] : parsed.terms()) {
    CHECK(key.b == it->first.b);
    CHECK(std::abs(key.a - it->first.a) < 1e-15);
    CHECK(std::abs(c - it->second) < 1e-15);
    ++it;
  }
  CHECK(to_string(parse_log_polynomial("0")) == "0");
  CHECK_THROWS_AS(parse_log_polynomial("nonsense"), Error);
}
