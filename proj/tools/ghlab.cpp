#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ghlab/runner.hpp"

namespace {

struct CliState {
  ghlab::RunConfig cfg;
  std::string group = "u";
  bool table = false;
};

void add_common_options(CLI::App* sub, CliState& st) {
  sub->add_option("--group", st.group, "group family: u or sp")->capture_default_str();
  sub->add_option("--p", st.cfg.p, "first block size")->capture_default_str();
  sub->add_option("--q", st.cfg.q, "second block size")->capture_default_str();
  sub->add_option("--n", st.cfg.n, "group size for basis and lemma checks (default p+q)");
  sub->add_option("--blocks", st.cfg.flag_blocks, "flag block sizes, e.g. --blocks 1 1 2");
  sub->add_option("--degree", st.cfg.degree, "composite degree")->capture_default_str();
  sub->add_option("--order", st.cfg.order, "p-harmonic order")->capture_default_str();
  sub->add_option("--samples", st.cfg.samples, "sample points per check")->capture_default_str();
  sub->add_option("--seed", st.cfg.seed, "RNG seed (GHLAB_SEED overrides the built-in default)")
      ->capture_default_str();
  sub->add_option("--out", st.cfg.output_path, "write the JSON report to this path");
  sub->add_flag("--table", st.table, "print the human-readable table instead of the JSON report");
  sub->add_option("--tol-algebra", st.cfg.tol.algebra, "exact-identity tolerance")->capture_default_str();
  sub->add_option("--tol-eigen", st.cfg.tol.eigen, "eigenvalue spread tolerance")->capture_default_str();
  sub->add_option("--tol-morphism", st.cfg.tol.morphism, "pointwise residual tolerance")->capture_default_str();
  sub->add_option("--tol-dual", st.cfg.tol.dual, "dual sign-flip tolerance")->capture_default_str();
  sub->add_option("--tol-crosscheck", st.cfg.tol.crosscheck, "finite-difference tolerance")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for eigenfamilies, harmonic morphisms, and p-harmonic "
               "functions on compact matrix groups and their non-compact duals"};
  app.require_subcommand(1);

  CliState st;
  if (const char* env = std::getenv("GHLAB_SEED")) st.cfg.seed = std::strtoull(env, nullptr, 10);

  const std::pair<const char*, const char*> commands[] = {
      {"basis-check", "orthonormal basis, bracket closure, and Casimir normalization"},
      {"lemma-check", "first-order coordinate identities for tau and kappa"},
      {"family-verify", "measure the eigenfamily constants and compare with the claim"},
      {"composite-verify", "degree-d polynomials in family members against the scaling law"},
      {"morphism-verify", "harmonic-morphism residuals of member-polynomial quotients"},
      {"quotient-verify", "descent through block quotients: invariance, splitting, horizontal constants"},
      {"pharmonic-verify", "proper p-harmonic constructions, symbolic chain plus numeric cross-checks"},
      {"dual-verify", "sign flips and p-harmonic constructions on the non-compact side"},
      {"sweep", "run the whole verification grid and merge the findings"},
  };
  for (const auto& [name, description] : commands) add_common_options(app.add_subcommand(name, description), st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ghlab::Report rep;
  try {
    st.cfg.command = app.get_subcommands().front()->get_name();
    st.cfg.group = ghlab::parse_group(st.group);
    rep = ghlab::run(st.cfg);
  } catch (const std::exception& e) {
    std::cerr << "ghlab: " << e.what() << "\n";
    return 2;
  }

  ghlab::Json j = ghlab::to_json(rep);
  std::string payload = j.dump(2) + "\n";
  if (!st.cfg.output_path.empty()) {
    std::ofstream out(st.cfg.output_path);
    if (!out) {
      std::cerr << "ghlab: cannot open " << st.cfg.output_path << " for writing\n";
      return 2;
    }
    out << payload;
  } else if (!st.table) {
    std::cout << payload;
  }
  if (st.table) std::cout << ghlab::render_table(j);
  return rep.exit_code();
}
