#include <catch2/catch_amalgamated.hpp>

#include "ghlab/runner.hpp"

using namespace ghlab;

namespace {

RunConfig base_config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.samples = 15;
  return cfg;
}

}  // namespace

TEST_CASE("family run on a two-block unitary case passes cleanly") {
  RunConfig cfg = base_config("family-verify");
  cfg.p = 2;
  cfg.q = 2;
  Report rep = run(cfg);
  CHECK(rep.aggregate() == Verdict::Pass);
  CHECK(rep.exit_code() == 0);
  CHECK_FALSE(rep.findings.empty());
  CHECK_FALSE(rep.degenerate);
}

TEST_CASE("symplectic family run warns on the claimed constants but still exits 0") {
  RunConfig cfg = base_config("family-verify");
  cfg.group = GroupKind::CompactSymplectic;
  Report rep = run(cfg);
  CHECK(rep.aggregate() == Verdict::Warn);
  CHECK(rep.exit_code() == 0);
  bool eigen_pass = false, claim_warn = false;
  for (const Finding& f : rep.findings) {
    if (f.id == "family.eigen" && f.verdict == Verdict::Pass) eigen_pass = true;
    if (f.id == "family.claim" && f.verdict == Verdict::Warn) claim_warn = true;
  }
  CHECK(eigen_pass);
  CHECK(claim_warn);
}

TEST_CASE("quotient run rejects the symplectic group") {
  RunConfig cfg = base_config("quotient-verify");
  cfg.group = GroupKind::CompactSymplectic;
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("unknown commands are configuration errors") {
  CHECK_THROWS_AS(run(base_config("frobnicate")), Error);
}

TEST_CASE("config validation rejects out-of-range values") {
  auto expect_reject = [](RunConfig cfg) { CHECK_THROWS_AS(validate_config(cfg), Error); };
  RunConfig cfg = base_config("family-verify");
  CHECK_NOTHROW(validate_config(cfg));

  RunConfig bad = cfg;
  bad.p = 0;
  expect_reject(bad);
  bad = cfg;
  bad.samples = 0;
  expect_reject(bad);
  bad = cfg;
  bad.order = 0;
  expect_reject(bad);
  bad = cfg;
  bad.degree = 0;
  expect_reject(bad);
  bad = cfg;
  bad.flag_blocks = {0, 2};
  expect_reject(bad);
  bad = cfg;
  bad.flag_blocks = {4};
  expect_reject(bad);
  bad = cfg;
  bad.tol.eigen = 0.0;
  expect_reject(bad);
}

TEST_CASE("reports are byte-stable across runs modulo timing") {
  RunConfig cfg = base_config("dual-verify");
  cfg.q = 2;
  Json a = to_json(run(cfg));
  Json b = to_json(run(cfg));
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a.dump() == b.dump());

  cfg.seed = 7;
  Json c = to_json(run(cfg));
  c.erase("timing_ms");
  CHECK(a.dump() != c.dump());
}

TEST_CASE("the table view carries ids and verdicts") {
  RunConfig cfg = base_config("basis-check");
  cfg.n = 2;
  Report rep = run(cfg);
  std::string table = render_table(to_json(rep));
  CHECK(table.find("basis.casimir") != std::string::npos);
  CHECK(table.find("PASS") != std::string::npos);
  CHECK(table.find("=>") != std::string::npos);
}

TEST_CASE("exit codes follow the verdict ladder") {
  Report rep;
  rep.findings.push_back({"x", Verdict::Warn, "", Json::object()});
  CHECK(rep.exit_code() == 0);
  rep.findings.push_back({"y", Verdict::Fail, "", Json::object()});
  CHECK(rep.exit_code() == 1);
  rep.degenerate = true;
  CHECK(rep.exit_code() == 3);
}

TEST_CASE("the config echo carries the tolerance set") {
  RunConfig cfg = base_config("basis-check");
  cfg.n = 1;
  Json j = to_json(run(cfg));
  CHECK(j["config"]["tolerances"]["eigen"] == 1e-8);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["schema"] == "ghlab-report/1");
}

TEST_CASE("sweep aggregates prefixed findings from every command") {
  RunConfig cfg = base_config("sweep");
  cfg.samples = 10;
  Report rep = run(cfg);
  CHECK(rep.exit_code() == 0);
  bool saw_basis = false, saw_dual = false, saw_prefix = false;
  int fails = 0;
  for (const Finding& f : rep.findings) {
    if (f.id.find("basis-check[") == 0) saw_basis = true;
    if (f.id.find("dual-verify[") == 0) saw_dual = true;
    if (f.id.find("]/") != std::string::npos) saw_prefix = true;
    if (f.verdict == Verdict::Fail) ++fails;
  }
  CHECK(saw_basis);
  CHECK(saw_dual);
  CHECK(saw_prefix);
  CHECK(fails == 0);
}
