#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghlab/error.hpp"
#include "ghlab/lie.hpp"

namespace ghlab {

/// Reports keep key insertion order so that identical runs serialize to
/// identical bytes; the timing field is the single exemption from that
/// contract.
using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Warn, Fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Warn: return "WARN";
    case Verdict::Fail: return "FAIL";
  }
  return "FAIL";
}

inline Verdict worse(Verdict a, Verdict b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

struct Tolerances {
  double algebra = 1e-10;
  double eigen = 1e-8;
  double morphism = 1e-9;
  double dual = 1e-6;
  double crosscheck = 1e-4;
};

struct RunConfig {
  std::string command;
  GroupKind group = GroupKind::Unitary;
  int n = 0;  ///< basis/lemma checks; 0 means p + q
  int p = 1;
  int q = 1;
  std::vector<int> flag_blocks;  ///< quotient blocks; empty means {p, q}
  int degree = 2;
  int order = 2;
  int samples = 50;
  std::uint64_t seed = 42;
  Tolerances tol;
  std::string output_path;  ///< empty means stdout
};

inline std::string group_tag(GroupKind kind) { return kind == GroupKind::Unitary ? "u" : "sp"; }

inline GroupKind parse_group(const std::string& s) {
  if (s == "u" || s == "unitary") return GroupKind::Unitary;
  if (s == "sp" || s == "symplectic") return GroupKind::CompactSymplectic;
  throw Error(ErrorKind::InvalidArgument, "unknown group '" + s + "' (expected u or sp)");
}

inline void validate_config(const RunConfig& cfg) {
  if (cfg.p < 1 || cfg.q < 1) throw Error(ErrorKind::InvalidArgument, "p and q must be >= 1");
  if (cfg.n < 0) throw Error(ErrorKind::InvalidArgument, "n must be positive when given");
  if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  if (cfg.degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be >= 1");
  if (cfg.order < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  for (int b : cfg.flag_blocks)
    if (b < 1) throw Error(ErrorKind::InvalidArgument, "flag blocks must be >= 1");
  if (!cfg.flag_blocks.empty() && cfg.flag_blocks.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "flag blocks need at least two entries");
  const Tolerances& t = cfg.tol;
  for (double v : {t.algebra, t.eigen, t.morphism, t.dual, t.crosscheck})
    if (!(v > 0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["group"] = group_tag(cfg.group);
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["flag_blocks"] = cfg.flag_blocks;
  j["degree"] = cfg.degree;
  j["order"] = cfg.order;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"algebra", cfg.tol.algebra},
                     {"eigen", cfg.tol.eigen},
                     {"morphism", cfg.tol.morphism},
                     {"dual", cfg.tol.dual},
                     {"crosscheck", cfg.tol.crosscheck}};
  return j;
}

struct Finding {
  std::string id;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  Json data = Json::object();
};

/// Fixed conventions embedded in every certificate so reports stand alone.
inline std::vector<std::string> report_conventions() {
  return {
      "metric <X,Y> = Re tr(X^* Y); fields act from the right: (X f)(g) = d/dt f(g exp(tX)) at t = 0",
      "tau(f) = sum_i X_i^2 f over an orthonormal basis; kappa(f,h) = sum_i (X_i f)(X_i h), complex "
      "bilinear with no conjugation",
      "eigen constants are measured; claimed values are reported alongside and a mismatch is a WARN, "
      "never a FAIL, because the certified fact is eigen-ness itself",
      "composite constants use lambda_d = d*lambda + d*(d-1)*mu and mu_d = d^2*mu, the forms the "
      "product rule forces; measurements adjudicate",
      "dual direction sets multiply compact directions by i; sign flips are checked against measured "
      "compact constants, and polynomial identities are evaluated at non-compact points directly",
      "log-polynomial arithmetic sweeps coefficients below 1e-14, so symbolic vanishing is decidable",
  };
}

struct Report {
  std::string command;
  Json config_echo;
  std::vector<Finding> findings;
  bool degenerate = false;
  std::string degeneracy_note;
  double timing_ms = 0.0;

  Verdict aggregate() const {
    Verdict v = Verdict::Pass;
    for (const Finding& f : findings) v = worse(v, f.verdict);
    return v;
  }

  int exit_code() const {
    if (degenerate) return 3;
    return aggregate() == Verdict::Fail ? 1 : 0;
  }
};

inline Json to_json(const Report& rep) {
  Json j;
  j["schema"] = "ghlab-report/1";
  j["command"] = rep.command;
  j["config"] = rep.config_echo;
  j["conventions"] = report_conventions();
  Json items = Json::array();
  int pass = 0, warn = 0, fail = 0;
  for (const Finding& f : rep.findings) {
    Json item;
    item["id"] = f.id;
    item["verdict"] = to_string(f.verdict);
    item["detail"] = f.detail;
    item["data"] = f.data;
    items.push_back(std::move(item));
    if (f.verdict == Verdict::Pass) ++pass;
    if (f.verdict == Verdict::Warn) ++warn;
    if (f.verdict == Verdict::Fail) ++fail;
  }
  j["findings"] = std::move(items);
  j["summary"] = {{"pass", pass},
                  {"warn", warn},
                  {"fail", fail},
                  {"verdict", to_string(rep.aggregate())},
                  {"degenerate", rep.degenerate}};
  if (rep.degenerate) j["summary"]["degeneracy"] = rep.degeneracy_note;
  j["timing_ms"] = rep.timing_ms;
  return j;
}

/// The table is rendered from the serialized JSON, never from the in-memory
/// report, so the two outputs cannot drift apart.
inline std::string render_table(const Json& j) {
  std::string out;
  out += "ghlab " + j.at("command").get<std::string>();
  out += "  (seed " + j.at("config").at("seed").dump();
  out += ", samples " + j.at("config").at("samples").dump() + ")\n";
  std::size_t width = 2;
  for (const Json& f : j.at("findings")) width = std::max(width, f.at("id").get<std::string>().size());
  for (const Json& f : j.at("findings")) {
    std::string id = f.at("id").get<std::string>();
    out += "  " + f.at("verdict").get<std::string>() + "  " + id;
    out.append(width - id.size() + 2, ' ');
    out += f.at("detail").get<std::string>() + "\n";
  }
  const Json& s = j.at("summary");
  out += "  => " + s.at("verdict").get<std::string>() + " (" + s.at("pass").dump() + " pass, " +
         s.at("warn").dump() + " warn, " + s.at("fail").dump() + " fail)\n";
  if (s.at("degenerate").get<bool>())
    out += "  !! partial report: " + s.at("degeneracy").get<std::string>() + "\n";
  return out;
}

}  // namespace ghlab
