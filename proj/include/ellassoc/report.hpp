#pragma once

#include <set>
#include <string>
#include <vector>

#include "ellassoc/json_io.hpp"

namespace ellassoc {

inline constexpr const char* kVersion = "0.1.0";

struct PhiSource {
  enum class Kind { kSolve, kFile, kTrivial };
  Kind kind = Kind::kSolve;
  int max_degree = 4;  // kSolve and kTrivial
  bool even = true;    // kSolve
  std::string path;    // kFile
};

struct ReportConfig {
  PhiSource phi;
  int associator_degree = 4;
  int elliptic_degree = 4;
  int diagram_degree = 4;     // two-strand diagram checks
  int diagram_degree_n3 = 3;  // three-strand diagram checks
  int lie_degree = 6;
  std::set<std::string> suites;  // empty means every suite
  bool timings = false;
};

// Suites: associator, elliptic, umap, isomorphism, slices, normalizers, chain, lie.
const std::vector<std::string>& report_suites();

// Throws InvalidArgument for an empty or malformed configuration:
// {"phi": {"source": "solve", "max_degree": 4, "even": true}
//        | {"source": "file", "path": "phi.json"} | {"source": "trivial"},
//  "max_degree": {"associator": 4, "elliptic": 4, "diagrams": 4, "diagrams_n3": 3, "lie": 6},
//  "checks": ["associator", ...], "timings": false}
ReportConfig parse_report_config(const Json& j);

// Runs every enabled check. Checks appear sorted by name and carry no wall
// times unless `timings` is set, so equal inputs give byte-identical dumps.
// Throws LoadError when the phi file is malformed.
Json run_report(const ReportConfig& config);

bool report_passed(const Json& report);
// "name: anchor" for every failing check.
std::vector<std::string> failing_checks(const Json& report);

}  // namespace ellassoc
