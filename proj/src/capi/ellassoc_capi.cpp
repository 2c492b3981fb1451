#include "ellassoc/ellassoc.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ellassoc/errors.hpp"
#include "ellassoc/expr.hpp"
#include "ellassoc/json_io.hpp"
#include "ellassoc/report.hpp"
#include "ellassoc/spaces.hpp"

struct ea_associator {
  ellassoc::AssociatorSeries phi;
};

namespace {

using namespace ellassoc;

thread_local std::string last_error;

template <class F>
ea_status guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const LoadError& e) {
    last_error = e.what();
    return EA_LOAD_ERROR;
  } catch (const ParseError& e) {
    last_error = e.what();
    return EA_PARSE_ERROR;
  } catch (const Json::exception& e) {
    last_error = std::string("invalid JSON: ") + e.what();
    return EA_LOAD_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return EA_INVALID_ARGUMENT;
  } catch (const InternalError& e) {
    last_error = std::string("internal error: ") + e.what();
    return EA_INTERNAL_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return EA_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return EA_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j) { *out = dup(j.dump(2) + "\n"); }

std::vector<int> counts_through(const AlgebraElement& residual, int N) {
  const auto counts = residual.nonzero_counts();
  return std::vector<int>(counts.begin() + 1, counts.begin() + N + 1);
}

bool all_zero(const std::vector<int>& v) {
  for (int x : v)
    if (x) return false;
  return true;
}

void check_degree(const ea_associator* phi, int max_degree) {
  require(phi != nullptr, "null associator");
  require(max_degree >= 1 && max_degree <= phi->phi.truncation(), "max degree exceeds the associator truncation");
}

}  // namespace

extern "C" {

const char* ea_version(void) { return ellassoc::kVersion; }

const char* ea_last_error(void) { return last_error.c_str(); }

void ea_string_free(char* s) { std::free(s); }

ea_status ea_associator_solve(int max_degree, int even, int gauge, ea_associator** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    require(max_degree >= 2 && max_degree <= 8, "max degree must lie in [2, 8]");
    require(gauge == 0 || gauge == 1, "gauge is 0 or 1");
    SolverConfig config{max_degree, even != 0, gauge == 0 ? Gauge::kLyndonAscending : Gauge::kLyndonDescending};
    *out = new ea_associator{solve_associator(config)};
    return EA_OK;
  });
}

ea_status ea_associator_load(const char* json, ea_associator** out, char** warnings) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "null argument");
    std::vector<std::string> notes;
    auto phi = associator_from_json(Json::parse(json), &notes);
    *out = new ea_associator{std::move(phi)};
    if (warnings) *warnings = dup(Json(notes).dump());
    return EA_OK;
  });
}

ea_status ea_associator_to_json(const ea_associator* phi, char** json) {
  return guard([&] {
    require(phi != nullptr && json != nullptr, "null argument");
    emit(json, associator_to_json(phi->phi));
    return EA_OK;
  });
}

int ea_associator_truncation(const ea_associator* phi) { return phi ? phi->phi.truncation() : -1; }

ea_status ea_associator_check(const ea_associator* phi, int max_degree, char** report) {
  return guard([&] {
    check_degree(phi, max_degree);
    require(report != nullptr, "null output");
    const AlgebraElement& g = phi->phi.group_like();
    const auto pentagon = counts_through(pentagon_residual(g, max_degree), max_degree);
    const auto plus = counts_through(hexagon_residual(g, 1, max_degree), max_degree);
    const auto minus = counts_through(hexagon_residual(g, -1, max_degree), max_degree);
    const bool pass = all_zero(pentagon) && all_zero(plus) && all_zero(minus);
    emit(report, {{"max_degree", max_degree},
                  {"pentagon", pentagon},
                  {"hexagon_plus", plus},
                  {"hexagon_minus", minus},
                  {"pass", pass}});
    return pass ? EA_OK : EA_CHECK_FAILED;
  });
}

void ea_associator_release(ea_associator* phi) { delete phi; }

ea_status ea_elliptic_build(const ea_associator* phi, int max_degree, char** json) {
  return guard([&] {
    check_degree(phi, max_degree);
    require(json != nullptr, "null output");
    emit(json, elliptic_pair_to_json(build_e_phi(phi->phi, max_degree), phi->phi));
    return EA_OK;
  });
}

ea_status ea_elliptic_verify(const ea_associator* phi, int max_degree, int identity, char** report) {
  return guard([&] {
    check_degree(phi, max_degree);
    require(report != nullptr, "null output");
    require(identity >= 0 && identity <= kEllipticIdentities, "identity is 1..4 or 0 for all");
    const EllipticPair pair = build_e_phi(phi->phi, max_degree);
    Json rows = Json::array();
    bool pass = true;
    for (int k = 1; k <= kEllipticIdentities; ++k) {
      if (identity != 0 && identity != k) continue;
      const auto t0 = std::chrono::steady_clock::now();
      const auto counts = counts_through(elliptic_residual(pair, phi->phi, k, max_degree), max_degree);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      pass = pass && all_zero(counts);
      rows.push_back({{"identity", k}, {"nonzero", counts}, {"wall_ms", ms.count()}});
    }
    emit(report, {{"max_degree", max_degree}, {"identities", rows}, {"pass", pass}});
    return pass ? EA_OK : EA_CHECK_FAILED;
  });
}

ea_status ea_diagram_dimension(const char* space, int strands, int degree, int* dim) {
  return guard([&] {
    require(space != nullptr && dim != nullptr, "null argument");
    *dim = slice({parse_diagram_class(space), strands, degree})->dimension();
    return EA_OK;
  });
}

ea_status ea_diagram_umap(const char* expr, int strands, int max_degree, int mod_h_flag, const char* normalize,
                          char** json) {
  return guard([&] {
    require(expr != nullptr && json != nullptr, "null argument");
    require(strands >= 1 && strands <= 3, "strands must lie in [1, 3]");
    require(max_degree >= 1 && max_degree <= 6, "max degree must lie in [1, 6]");
    AlgebraPtr words = free_lift(*t1n(strands, max_degree), max_degree);
    DiagramElement image = u_map(parse_element(expr, words, max_degree), strands);
    const std::string norm = normalize ? normalize : "";
    if (norm == "phi") image = phi_normalize(image);
    else if (norm == "gamma") image = gamma_normalize(image);
    else if (norm == "beta") image = beta_normalize(image);
    else if (norm == "alpha") image = alpha_normalize(image);
    else require(norm.empty(), "normalize is phi, gamma, beta or alpha");
    if (mod_h_flag) image = mod_h(image);
    Json j = diagram_element_to_json(image);
    j["strands"] = strands;
    emit(json, j);
    return EA_OK;
  });
}

ea_status ea_diagram_isomorphism(int strands, int max_degree, char** report) {
  return guard([&] {
    require(report != nullptr, "null output");
    Json rows = Json::array();
    bool pass = true;
    for (const auto& r : isomorphism_report(strands, max_degree)) {
      pass = pass && r.injective && r.surjective;
      rows.push_back({{"degree", r.degree},
                      {"words", r.words},
                      {"rank_algebra", r.rank_algebra},
                      {"rank_diagrams", r.rank_diagrams},
                      {"rank_joint", r.rank_joint},
                      {"target_dim", r.target_dim},
                      {"well_defined", r.well_defined},
                      {"injective", r.injective},
                      {"surjective", r.surjective}});
    }
    emit(report, {{"strands", strands}, {"rows", rows}, {"pass", pass}});
    return pass ? EA_OK : EA_CHECK_FAILED;
  });
}

ea_status ea_lie_bch(const char* a, const char* b, int max_degree, char** json) {
  return guard([&] {
    require(a != nullptr && b != nullptr && json != nullptr, "null argument");
    require(max_degree >= 1 && max_degree <= 10, "max degree must lie in [1, 10]");
    AlgebraPtr alg = free_ab(max_degree);
    auto lie = [&](const char* text) {
      const AlgebraElement e = parse_element(text, alg, max_degree);
      require(e.constant() == 0, "bch arguments need zero constant term");
      return free_element_to_lie(e);
    };
    emit(json, lie_to_json(bch(lie(a), lie(b))));
    return EA_OK;
  });
}

ea_status ea_expr_reduce(const char* algebra, const char* expr, int max_degree, char** text) {
  return guard([&] {
    require(algebra != nullptr && expr != nullptr && text != nullptr, "null argument");
    require(max_degree >= 0 && max_degree <= 8, "max degree must lie in [0, 8]");
    *text = dup(format_element(parse_element(expr, algebra_by_name(algebra, max_degree), max_degree)));
    return EA_OK;
  });
}

ea_status ea_report_run(const char* config_json, char** report_json) {
  return guard([&] {
    require(config_json != nullptr && report_json != nullptr, "null argument");
    Json cfg;
    try {
      cfg = Json::parse(config_json);
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(std::string("config is not JSON: ") + e.what());
    }
    const Json report = run_report(parse_report_config(cfg));
    emit(report_json, report);
    if (report_passed(report)) return EA_OK;
    std::string names;
    for (const auto& f : failing_checks(report)) names += (names.empty() ? "" : "; ") + f;
    last_error = "failing checks: " + names;
    return EA_CHECK_FAILED;
  });
}

}  // extern "C"
