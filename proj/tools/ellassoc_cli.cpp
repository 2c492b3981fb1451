// Command-line front end. Talks to the library only through the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>

#include "ellassoc/ellassoc.h"

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
};

using Owned = std::unique_ptr<char, decltype(&ea_string_free)>;
Owned own(char* s) { return Owned(s, &ea_string_free); }

// Maps a status to an exit code; prints the library's message for errors.
int status_exit(ea_status s) {
  switch (s) {
    case EA_OK:
      return kExitPass;
    case EA_CHECK_FAILED:
      if (*ea_last_error()) std::cerr << ea_last_error() << "\n";
      return kExitFail;
    case EA_INTERNAL_ERROR:
      std::cerr << "error: " << ea_last_error() << "\n";
      return kExitFail;
    default:
      std::cerr << "error: " << ea_last_error() << "\n";
      return kExitUsage;
  }
}

void check(ea_status s) {
  if (s != EA_OK && s != EA_CHECK_FAILED) throw Failure{status_exit(s)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{kExitUsage};
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{kExitUsage};
  }
}

using Phi = std::unique_ptr<ea_associator, decltype(&ea_associator_release)>;

Phi load_phi(const std::string& path) {
  const std::string text = read_file(path);
  ea_associator* raw = nullptr;
  char* warnings = nullptr;
  check(ea_associator_load(text.c_str(), &raw, &warnings));
  auto w = own(warnings);
  if (w && std::string(w.get()) != "[]") std::cerr << "warning: " << w.get() << "\n";
  return Phi(raw, &ea_associator_release);
}

std::string counts_text(const nlohmann::json& counts) {
  std::string out;
  for (const auto& c : counts) out += (out.empty() ? "" : " ") + std::to_string(c.get<long>());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with associators, elliptic pairs and Jacobi diagrams"};
  app.set_version_flag("--version", std::string(ea_version()));
  app.require_subcommand(1);

  // assoc
  auto* assoc = app.add_subcommand("assoc", "Drinfeld associators")->require_subcommand(1);
  int solve_degree = 4;
  bool even = true;
  std::string gauge = "ascending", solve_out;
  auto* solve = assoc->add_subcommand("solve", "solve the pentagon and hexagon equations degree by degree");
  solve->add_option("--max-degree", solve_degree, "truncation degree")->check(CLI::Range(2, 8));
  solve->add_flag("--even,!--no-even", even, "pin odd-degree terms of log phi to zero (default on)");
  solve->add_option("--gauge", gauge, "Lyndon order that decides which unknowns stay free")
      ->check(CLI::IsMember({"ascending", "descending"}));
  solve->add_option("--out", solve_out, "output file (default stdout)");

  std::string phi_path;
  int check_degree = 4;
  auto* acheck = assoc->add_subcommand("check", "recompute pentagon and hexagon residuals");
  acheck->add_option("--phi", phi_path, "associator JSON")->required();
  acheck->add_option("--max-degree", check_degree, "degree bound")->check(CLI::Range(1, 8));

  // elliptic
  auto* elliptic = app.add_subcommand("elliptic", "the elliptic pair built from an associator")->require_subcommand(1);
  int ell_degree = 4;
  std::string ell_out, identity = "all", verify_json;
  auto* build = elliptic->add_subcommand("build", "compute X and Y");
  build->add_option("--phi", phi_path, "associator JSON")->required();
  build->add_option("--max-degree", ell_degree, "truncation degree")->check(CLI::Range(1, 8));
  build->add_option("--out", ell_out, "output file (default stdout)");
  auto* verify = elliptic->add_subcommand("verify", "check the elliptic identities");
  verify->add_option("--phi", phi_path, "associator JSON")->required();
  verify->add_option("--max-degree", ell_degree, "truncation degree")->check(CLI::Range(1, 8));
  verify->add_option("--identity", identity, "1, 2, 3, 4 or all")->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
  verify->add_option("--json", verify_json, "write the JSON report here");

  // diagrams
  auto* diagrams = app.add_subcommand("diagrams", "Jacobi diagram spaces")->require_subcommand(1);
  std::string space = "full", expr, normalize;
  int strands = 2, degree = 1, umap_degree = 4, iso_degree = 3;
  bool mod_h = false;
  auto* dim = diagrams->add_subcommand("dim", "dimension of a diagram space slice");
  dim->add_option("--space", space, "full, R, SR, SRmodH, OSR or FOSR")->required();
  dim->add_option("--strands", strands, "number of strands")->required();
  dim->add_option("--degree", degree, "degree")->required();
  auto* umap = diagrams->add_subcommand("umap", "diagram image of a word combination in x_i, y_i, t_ij");
  umap->add_option("--strands", strands, "number of strands")->required();
  umap->add_option("--expr", expr, "expression")->required();
  umap->add_option("--max-degree", umap_degree, "truncation degree")->check(CLI::Range(1, 6));
  umap->add_flag("--mod-h", mod_h, "drop diagrams with a same-strand chord");
  umap->add_option("--normalize", normalize, "phi, gamma, beta or alpha")
      ->check(CLI::IsMember({"phi", "gamma", "beta", "alpha"}));
  auto* iso = diagrams->add_subcommand("check-isomorphism", "rank check of u~ against SR modulo H");
  iso->add_option("--strands", strands, "2 or 3")->required()->check(CLI::Range(2, 3));
  iso->add_option("--max-degree", iso_degree, "degree bound")->check(CLI::Range(1, 5));

  // lie
  auto* lie = app.add_subcommand("lie", "free Lie algebra on A, B")->require_subcommand(1);
  std::string lie_a, lie_b;
  int lie_degree = 4;
  auto* bch = lie->add_subcommand("bch", "log(exp(a) exp(b)) for Lie expressions a, b");
  bch->add_option("--a", lie_a, "first Lie expression, e.g. A")->required();
  bch->add_option("--b", lie_b, "second Lie expression, e.g. [A,B]")->required();
  bch->add_option("--max-degree", lie_degree, "truncation degree")->check(CLI::Range(1, 10));

  // expr
  auto* ex = app.add_subcommand("expr", "parse and print elements")->require_subcommand(1);
  std::string algebra_name = "t1n(2)";
  int expr_degree = 4;
  auto* reduce = ex->add_subcommand("reduce", "print the reduced canonical form");
  reduce->add_option("--algebra", algebra_name, "t1n(n), dk(n) or free(A,B,...)");
  reduce->add_option("--expr", expr, "expression")->required();
  reduce->add_option("--max-degree", expr_degree, "truncation degree")->check(CLI::Range(0, 8));

  // report
  auto* report = app.add_subcommand("report", "aggregated verification report")->require_subcommand(1);
  std::string config_path, report_out;
  auto* run = report->add_subcommand("run", "run every configured check");
  run->add_option("--config", config_path, "configuration JSON")->required();
  run->add_option("--out", report_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      ea_associator* raw = nullptr;
      check(ea_associator_solve(solve_degree, even ? 1 : 0, gauge == "ascending" ? 0 : 1, &raw));
      Phi phi(raw, &ea_associator_release);
      char* json = nullptr;
      check(ea_associator_to_json(phi.get(), &json));
      write_output(solve_out, own(json).get());
      return kExitPass;
    }
    if (acheck->parsed()) {
      Phi phi = load_phi(phi_path);
      char* out = nullptr;
      const ea_status s = ea_associator_check(phi.get(), check_degree, &out);
      check(s);
      const auto j = nlohmann::json::parse(own(out).get());
      std::cout << "nonzero residual coordinates by degree, 1.." << check_degree << "\n";
      for (const char* key : {"pentagon", "hexagon_plus", "hexagon_minus"})
        std::cout << "  " << key << ": " << counts_text(j.at(key)) << "\n";
      std::cout << (s == EA_OK ? "PASS" : "FAIL") << "\n";
      return status_exit(s);
    }
    if (build->parsed()) {
      Phi phi = load_phi(phi_path);
      char* json = nullptr;
      check(ea_elliptic_build(phi.get(), ell_degree, &json));
      write_output(ell_out, own(json).get());
      return kExitPass;
    }
    if (verify->parsed()) {
      Phi phi = load_phi(phi_path);
      char* out = nullptr;
      const ea_status s = ea_elliptic_verify(phi.get(), ell_degree, identity == "all" ? 0 : std::stoi(identity), &out);
      check(s);
      const std::string text = own(out).get();
      const auto j = nlohmann::json::parse(text);
      for (const auto& row : j.at("identities"))
        std::cout << "identity " << row.at("identity") << ": " << counts_text(row.at("nonzero")) << "  ("
                  << row.at("wall_ms") << " ms)\n";
      if (!verify_json.empty()) write_output(verify_json, text);
      std::cout << (s == EA_OK ? "PASS" : "FAIL") << "\n";
      return status_exit(s);
    }
    if (dim->parsed()) {
      int value = 0;
      check(ea_diagram_dimension(space.c_str(), strands, degree, &value));
      std::cout << value << "\n";
      return kExitPass;
    }
    if (umap->parsed()) {
      char* json = nullptr;
      check(ea_diagram_umap(expr.c_str(), strands, umap_degree, mod_h ? 1 : 0,
                            normalize.empty() ? nullptr : normalize.c_str(), &json));
      std::cout << own(json).get();
      return kExitPass;
    }
    if (iso->parsed()) {
      char* out = nullptr;
      const ea_status s = ea_diagram_isomorphism(strands, iso_degree, &out);
      check(s);
      std::cout << own(out).get();
      return status_exit(s);
    }
    if (bch->parsed()) {
      char* json = nullptr;
      check(ea_lie_bch(lie_a.c_str(), lie_b.c_str(), lie_degree, &json));
      std::cout << own(json).get();
      return kExitPass;
    }
    if (reduce->parsed()) {
      char* text = nullptr;
      check(ea_expr_reduce(algebra_name.c_str(), expr.c_str(), expr_degree, &text));
      std::cout << own(text).get() << "\n";
      return kExitPass;
    }
    if (run->parsed()) {
      const std::string config = read_file(config_path);
      char* out = nullptr;
      const ea_status s = ea_report_run(config.c_str(), &out);
      check(s);
      write_output(report_out, own(out).get());
      return status_exit(s);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
