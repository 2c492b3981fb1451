#include "ellassoc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>

#include "ellassoc/errors.hpp"
#include "ellassoc/spaces.hpp"

namespace ellassoc {

namespace {

constexpr const char* kPass = "pass";
constexpr const char* kFail = "fail";
constexpr const char* kExcluded = "excluded";
constexpr const char* kUnverified = "unverified-by-design";

struct Check {
  Check(std::string n, std::string a, int l = 1, int h = 0)
      : name(std::move(n)), anchor(std::move(a)), lo(l), hi(h) {}

  std::string name;
  std::string anchor;
  int lo = 1;
  int hi = 0;
  std::vector<long> nonzero;  // per degree lo..hi
  Json details = Json::object();
  std::string status;  // computed from `nonzero` when empty
};

Json to_json(const Check& c) {
  Json j{{"name", c.name}, {"anchor", c.anchor}, {"status", c.status}};
  if (c.hi >= c.lo) {
    j["degrees"] = {c.lo, c.hi};
    j["nonzero"] = c.nonzero;
  }
  if (!c.details.empty()) j["details"] = c.details;
  return j;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int bounded(const Json& j, const char* key, int fallback, int lo, int hi) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > hi)
    throw InvalidArgument(std::string("config: ") + key + " must be an integer in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  return v.get<int>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      throw InvalidArgument("config: unknown field '" + k + "' in " + where);
}

// ---- suites -----------------------------------------------------------------------

void associator_suite(const AssociatorSeries& phi, int N, std::vector<Check>& out) {
  const AlgebraElement& g = phi.group_like();
  auto add = [&](const std::string& name, const std::string& anchor, const AlgebraElement& residual) {
    Check c{name, anchor, 1, N};
    const auto counts = residual.nonzero_counts();
    for (int d = 1; d <= N; ++d) c.nonzero.push_back(counts[d]);
    out.push_back(std::move(c));
  };
  add("associator.pentagon", "pentagon equation of the associator in U(t_4)", pentagon_residual(g, N));
  add("associator.hexagon_plus", "hexagon equation with crossing exp(t/2) in U(t_3)", hexagon_residual(g, 1, N));
  add("associator.hexagon_minus", "hexagon equation with crossing exp(-t/2) in U(t_3)", hexagon_residual(g, -1, N));
}

void elliptic_suite(const AssociatorSeries& phi, int N, std::vector<Check>& out) {
  const EllipticPair pair = build_e_phi(phi, N);
  static const char* anchors[kEllipticIdentities] = {
      "group commutator of Y and X equals exp(t12) in U(t_{1,2})",
      "X at (x1+x2, y1+y2) factors through phi(t12, t23) in U(t_{1,3})",
      "Y at (x1+x2, y1+y2) factors through phi(t12, t23) in U(t_{1,3})",
      "conjugated Y(x1,y1) and X(x2,y2) satisfy the braid-type relation in U(t_{1,3})",
  };
  for (int k = 1; k <= kEllipticIdentities; ++k) {
    Check c{"elliptic.identity" + std::to_string(k), anchors[k - 1], 1, N};
    const auto counts = elliptic_residual(pair, phi, k, N).nonzero_counts();
    for (int d = 1; d <= N; ++d) c.nonzero.push_back(counts[d]);
    out.push_back(std::move(c));
  }
  Check logs{"elliptic.lie_logs", "log X and log Y are Lie series", 1, N};
  logs.nonzero.assign(N, 0);
  for (const AlgebraElement* e : {&pair.x, &pair.y}) {
    try {
      free_element_to_lie(log(*e));
    } catch (const InvalidArgument&) {
      logs.nonzero[0] += 1;
      logs.details["error"] = "a logarithm is not a Lie series";
    }
  }
  out.push_back(std::move(logs));
}

void umap_suite(int d2, int d3, std::vector<Check>& out) {
  Check diagonal{"umap.diagonal_relation", "u kills [x_i, y_i] + sum_j t_ij", 1, std::max(d2, d3)};
  diagonal.nonzero.assign(diagonal.hi, 0);
  diagonal.status = kExcluded;
  diagonal.details["reason"] =
      "the image is a same-strand chord plus a two-strand chord; identifying them needs the torus "
      "relations of the diagram category, which are not implemented";
  for (int n : {2, 3}) {
    const int D = n == 2 ? d2 : d3;
    Check c{"umap.relations_n" + std::to_string(n), "u kills the commuting, mixed and central relations of t_{1," +
                                                        std::to_string(n) + "}",
            1, D};
    c.nonzero.assign(D, 0);
    for (const auto& row : umap_relation_images(n, D)) {
      c.details[to_string(row.kind)].push_back({{"degree", row.degree}, {"elements", row.elements}, {"nonzero", row.nonzero}});
      if (row.kind == RelationKind::kDiagonal) diagonal.nonzero[row.degree - 1] += row.nonzero;
      else c.nonzero[row.degree - 1] += row.nonzero;
    }
    out.push_back(std::move(c));
  }
  Check mult{"umap.multiplicativity_mod_diagonal",
             "u(a b) = u(a) u(b) for reduced a, b modulo u of the diagonal ideal", 2, std::max(d2, d3)};
  for (int d = 2; d <= mult.hi; ++d) {
    long failures = 0;
    for (int n : {2, 3}) {
      if (d > (n == 2 ? d2 : d3)) continue;
      const auto m = umap_multiplicativity(n, d, 100, 0x5eed0000u + 16 * d + n);
      failures += m.failures_mod_diagonal;
      mult.details["raw_failures"].push_back({{"strands", n}, {"degree", d}, {"pairs", m.pairs}, {"failures", m.failures}});
    }
    mult.nonzero.push_back(failures);
  }
  if (mult.hi >= 2) out.push_back(std::move(mult));
  out.push_back(std::move(diagonal));
}

void isomorphism_suite(int d2, int d3, std::vector<Check>& out) {
  for (int n : {2, 3}) {
    const int D = n == 2 ? d2 : d3;
    Check c{"isomorphism.n" + std::to_string(n),
            "u~ maps the x, y subalgebra of U(t_{1," + std::to_string(n) + "}) isomorphically onto SR modulo H", 1, D};
    for (const auto& r : isomorphism_report(n, D)) {
      const bool square = n != 2 || (r.rank_algebra == (1 << r.degree) && r.target_dim == (1 << r.degree));
      c.nonzero.push_back(r.injective && r.surjective && square ? 0 : 1);
      c.details["ranks"].push_back({{"degree", r.degree},
                                    {"algebra", r.rank_algebra},
                                    {"diagrams", r.rank_diagrams},
                                    {"joint", r.rank_joint},
                                    {"target", r.target_dim}});
    }
    out.push_back(std::move(c));
  }
}

const std::vector<DiagramClass>& all_classes() {
  static const std::vector<DiagramClass> classes{DiagramClass::kFull,    DiagramClass::kR,   DiagramClass::kSR,
                                                 DiagramClass::kSRmodH, DiagramClass::kOSR, DiagramClass::kFOSR};
  return classes;
}

void slices_suite(int d2, int d3, std::vector<Check>& out) {
  Check rel{"slices.relations_vanish", "every relation element reduces to zero in its own slice", 1, std::max(d2, d3)};
  rel.nonzero.assign(rel.hi, 0);
  for (int n : {2, 3})
    for (int d = 1; d <= (n == 2 ? d2 : d3); ++d)
      for (DiagramClass cls : all_classes()) {
        if (cls == DiagramClass::kFOSR && n != 3) continue;
        const SpaceSpec spec{cls, n, d};
        auto s = slice(spec);
        for (const auto& r : relation_elements(spec)) {
          // OSR and FOSR relations may straddle H; test them where they live.
          if (cls == DiagramClass::kOSR || cls == DiagramClass::kFOSR) {
            if (!slice({DiagramClass::kSRmodH, n, d})->is_zero(mod_h(r))) ++rel.nonzero[d - 1];
          } else if (!s->is_zero(r)) {
            ++rel.nonzero[d - 1];
          }
        }
        rel.details["dimensions"][to_string(cls)]["n" + std::to_string(n)].push_back(s->dimension());
      }
  out.push_back(std::move(rel));

  Check dims{"slices.two_strand_homotopy_dims", "dim SR/H on two strands is 2^d", 1, d2};
  for (int d = 1; d <= d2; ++d)
    dims.nonzero.push_back(slice({DiagramClass::kSRmodH, 2, d})->dimension() == (1 << d) ? 0 : 1);
  out.push_back(std::move(dims));
}

void normalizers_suite(int d2, int d3, std::vector<Check>& out) {
  const int hi = std::max(d2, d3);
  Check phi{"normalizers.phi", "x-below-y normal form is exact in the full class", 1, hi};
  Check gamma{"normalizers.gamma", "removing trivalent vertices by STU is exact in class R", 1, hi};
  Check beta{"normalizers.beta", "ordering labels is exact in SR modulo H", 1, hi};
  Check alpha{"normalizers.alpha", "full ordering on three strands is exact in SR modulo H", 1, d3};
  for (Check* c : {&phi, &gamma, &beta, &alpha}) c->nonzero.assign(c->hi, 0);
  for (int n : {2, 3})
    for (int d = 1; d <= (n == 2 ? d2 : d3); ++d) {
      auto full = slice({DiagramClass::kFull, n, d});
      for (const auto& D : enumerate({DiagramClass::kFull, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto p = phi_normalize(e);
        if (!full->is_zero(p - e) || !(phi_normalize(p) == p)) ++phi.nonzero[d - 1];
      }
      auto r = slice({DiagramClass::kR, n, d});
      for (const auto& D : enumerate({DiagramClass::kR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto g = gamma_normalize(e);
        bool ok = r->is_zero(g - e) && gamma_normalize(g) == g;
        for (const auto& [x, c] : g.terms()) ok = ok && x.trivalent == 0;
        if (!ok) ++gamma.nonzero[d - 1];
      }
      auto h = slice({DiagramClass::kSRmodH, n, d});
      for (const auto& D : enumerate({DiagramClass::kSR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto b = beta_normalize(e);
        bool ok = h->is_zero(mod_h(b) - mod_h(e)) && beta_normalize(b) == b;
        for (const auto& [x, c] : b.terms()) ok = ok && is_ordered(x);
        if (!ok) ++beta.nonzero[d - 1];
      }
      if (n != 3) continue;
      for (const auto& D : enumerate({DiagramClass::kOSR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto a = alpha_normalize(e);
        bool ok = h->is_zero(mod_h(a) - mod_h(e)) && alpha_normalize(a) == a;
        for (const auto& [x, c] : a.terms()) ok = ok && is_fully_ordered(x);
        if (!ok) ++alpha.nonzero[d - 1];
      }
    }
  for (Check* c : {&phi, &gamma, &beta, &alpha}) out.push_back(std::move(*c));
}

void chain_suite(int D, std::vector<Check>& out) {
  Check c{"chain.expansion", "u(x~1) equals the Bernoulli sum of chain diagrams modulo H", 1, D};
  AlgebraPtr alg = t1n(2, D);
  const auto x = AlgebraElement::generator(alg, D, "x1");
  const auto y = AlgebraElement::generator(alg, D, "y1");
  AlgebraElement x_tilde(alg, D), ad = x;
  DiagramElement chains;
  for (int i = 0; i < D; ++i) {
    if (i > 0) ad = commutator(y, ad);
    const Rational coeff = bernoulli(i) / factorial(i);
    x_tilde += coeff * ad;
    chains.add(chain_diagram(i), coeff);
  }
  const DiagramElement lhs = mod_h(u_map(x_tilde, 2));
  const DiagramElement rhs = mod_h(gamma_normalize(chains));
  for (int d = 1; d <= D; ++d) {
    DiagramElement diff;
    for (const auto& [g, k] : lhs.terms())
      if (g.degree() == d) diff.add(g, k);
    for (const auto& [g, k] : rhs.terms())
      if (g.degree() == d) diff.add(g, -k);
    c.nonzero.push_back(static_cast<long>(slice({DiagramClass::kSRmodH, 2, d})->coordinates(diff).size()));
  }
  out.push_back(std::move(c));
}

void lie_suite(int N, std::vector<Check>& out) {
  Check rt{"lie.bch_exp_log", "exp(bch(A, B)) = exp(A) exp(B) and log(exp(A + B)) = A + B", 1, N};
  AlgebraPtr alg = free_ab(N);
  const auto a = LieSeries::generator(ab_alphabet(), N, 0);
  const auto b = LieSeries::generator(ab_alphabet(), N, 1);
  const auto A = AlgebraElement::generator(alg, N, "A");
  const auto B = AlgebraElement::generator(alg, N, "B");
  const auto z = AlgebraElement::from_poly(alg, N, bch(a, b).to_poly());
  const auto counts = (exp(z) - exp(A) * exp(B)).nonzero_counts();
  const auto back = (log(exp(A + B)) - (A + B)).nonzero_counts();
  for (int d = 1; d <= N; ++d) rt.nonzero.push_back(counts[d] + back[d]);
  out.push_back(std::move(rt));

  // B_n = n! b_n with sum_k b_k x^k = x / (e^x - 1), by power-series inversion.
  constexpr int kBernoulliMax = 12;
  Check bern{"lie.bernoulli", "Bernoulli numbers agree with the generating function", 0, kBernoulliMax};
  std::vector<Rational> inv(kBernoulliMax + 1);
  for (int n = 0; n <= kBernoulliMax; ++n) {
    Rational s = n == 0 ? Rational(1) : Rational(0);
    for (int k = 0; k < n; ++k) s -= inv[k] / factorial(n - k + 1);
    inv[n] = s;
    bern.nonzero.push_back(bernoulli(n) == inv[n] * factorial(n) ? 0 : 1);
  }
  out.push_back(std::move(bern));
}

void unverified(std::vector<Check>& out) {
  Check r{"unverified.r_injective", "injectivity of the map r into the labeled diagram space"};
  Check p{"unverified.phi_t12_t23", "phi(t12, t23) = 1 in the one-labeled quotient"};
  for (Check* c : {&r, &p}) {
    c->status = kUnverified;
    c->details["reason"] = "depends on relations of the diagram category that are not implemented";
    out.push_back(std::move(*c));
  }
}

}  // namespace

const std::vector<std::string>& report_suites() {
  static const std::vector<std::string> suites{"associator", "elliptic", "umap", "isomorphism",
                                               "slices",     "normalizers", "chain", "lie"};
  return suites;
}

ReportConfig parse_report_config(const Json& j) {
  if (!j.is_object() || j.empty()) throw InvalidArgument("config: expected a nonempty object");
  only_keys(j, {"phi", "max_degree", "checks", "timings"}, "config");
  if (!j.contains("phi") || !j.at("phi").is_object()) throw InvalidArgument("config: 'phi' source is required");
  ReportConfig c;
  const Json& phi = j.at("phi");
  only_keys(phi, {"source", "max_degree", "even", "path"}, "phi");
  const std::string source = phi.value("source", "");
  if (source == "solve") {
    c.phi.kind = PhiSource::Kind::kSolve;
    c.phi.max_degree = bounded(phi, "max_degree", 4, 2, 8);
    if (phi.contains("even") && !phi.at("even").is_boolean()) throw InvalidArgument("config: 'even' is a boolean");
    c.phi.even = phi.value("even", true);
  } else if (source == "file") {
    c.phi.kind = PhiSource::Kind::kFile;
    if (!phi.contains("path") || !phi.at("path").is_string()) throw InvalidArgument("config: phi file needs 'path'");
    c.phi.path = phi.at("path").get<std::string>();
  } else if (source == "trivial") {
    c.phi.kind = PhiSource::Kind::kTrivial;
    c.phi.max_degree = bounded(phi, "max_degree", 4, 1, 8);
  } else {
    throw InvalidArgument("config: phi source must be solve, file or trivial");
  }
  if (j.contains("max_degree")) {
    const Json& m = j.at("max_degree");
    if (!m.is_object()) throw InvalidArgument("config: 'max_degree' is an object");
    only_keys(m, {"associator", "elliptic", "diagrams", "diagrams_n3", "lie"}, "max_degree");
    c.associator_degree = bounded(m, "associator", c.associator_degree, 1, 8);
    c.elliptic_degree = bounded(m, "elliptic", c.elliptic_degree, 1, 8);
    c.diagram_degree = bounded(m, "diagrams", c.diagram_degree, 1, 5);
    c.diagram_degree_n3 = bounded(m, "diagrams_n3", c.diagram_degree_n3, 1, 4);
    c.lie_degree = bounded(m, "lie", c.lie_degree, 1, 10);
  }
  if (j.contains("checks")) {
    const Json& list = j.at("checks");
    if (!list.is_array() || list.empty()) throw InvalidArgument("config: 'checks' is a nonempty array");
    for (const auto& s : list) {
      const auto& all = report_suites();
      if (!s.is_string() || std::find(all.begin(), all.end(), s.get<std::string>()) == all.end())
        throw InvalidArgument("config: unknown check suite " + s.dump());
      c.suites.insert(s.get<std::string>());
    }
  }
  if (j.contains("timings")) {
    if (!j.at("timings").is_boolean()) throw InvalidArgument("config: 'timings' is a boolean");
    c.timings = j.at("timings").get<bool>();
  }
  if (c.phi.kind != PhiSource::Kind::kFile &&
      c.phi.max_degree < std::max(c.associator_degree, c.elliptic_degree))
    throw InvalidArgument("config: phi max_degree is below the associator or elliptic degree");
  return c;
}

Json run_report(const ReportConfig& config) {
  auto enabled = [&](const std::string& s) { return config.suites.empty() || config.suites.count(s) > 0; };
  const int phi_degree = std::max(config.associator_degree, config.elliptic_degree);

  Json provenance;
  std::optional<AssociatorSeries> phi;
  if (enabled("associator") || enabled("elliptic")) {
    switch (config.phi.kind) {
      case PhiSource::Kind::kSolve:
        phi.emplace(solve_associator({config.phi.max_degree, config.phi.even, Gauge::kLyndonAscending}));
        provenance = {{"source", "solve"}, {"max_degree", config.phi.max_degree}, {"even", config.phi.even},
                      {"gauge", "lyndon-ascending"}};
        break;
      case PhiSource::Kind::kFile: {
        const std::string text = read_file(config.phi.path);
        Json j;
        try {
          j = Json::parse(text);
        } catch (const Json::parse_error& e) {
          throw LoadError("", std::string("phi file is not JSON: ") + e.what());
        }
        phi.emplace(associator_from_json(j));
        if (phi->truncation() < phi_degree)
          throw InvalidArgument("phi file is truncated at degree " + std::to_string(phi->truncation()));
        provenance = {{"source", "file"}, {"path", config.phi.path}, {"fnv1a64", fnv1a64(text)}};
        break;
      }
      case PhiSource::Kind::kTrivial:
        phi.emplace(LieSeries(ab_alphabet(), config.phi.max_degree));
        provenance = {{"source", "trivial"}, {"max_degree", config.phi.max_degree}};
        break;
    }
    provenance["log_phi"] = lie_to_json(phi->log_phi());
  }

  std::vector<Check> checks;
  Json wall = Json::object();
  auto run = [&](const std::string& suite, const std::function<void()>& body) {
    if (!enabled(suite)) return;
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    wall[suite] = ms.count();
  };
  const int d2 = config.diagram_degree, d3 = config.diagram_degree_n3;
  run("associator", [&] { associator_suite(*phi, config.associator_degree, checks); });
  run("elliptic", [&] { elliptic_suite(*phi, config.elliptic_degree, checks); });
  run("umap", [&] { umap_suite(d2, d3, checks); });
  run("isomorphism", [&] { isomorphism_suite(d2, d3, checks); });
  run("slices", [&] { slices_suite(d2, d3, checks); });
  run("normalizers", [&] { normalizers_suite(d2, d3, checks); });
  run("chain", [&] { chain_suite(d2, checks); });
  run("lie", [&] { lie_suite(config.lie_degree, checks); });
  unverified(checks);

  for (auto& c : checks)
    if (c.status.empty())
      c.status = std::all_of(c.nonzero.begin(), c.nonzero.end(), [](long v) { return v == 0; }) ? kPass : kFail;
  std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });

  Json report;
  report["artifact"] = "ellassoc";
  report["version"] = kVersion;
  if (!provenance.is_null()) report["phi"] = provenance;
  report["config"] = {{"max_degree",
                       {{"associator", config.associator_degree},
                        {"elliptic", config.elliptic_degree},
                        {"diagrams", d2},
                        {"diagrams_n3", d3},
                        {"lie", config.lie_degree}}},
                      {"checks", config.suites.empty() ? Json(report_suites()) : Json(config.suites)}};
  report["checks"] = Json::array();
  Json failures = Json::array();
  for (const auto& c : checks) {
    report["checks"].push_back(to_json(c));
    if (c.status == kFail) failures.push_back(c.name);
  }
  report["failures"] = failures;
  report["all_pass"] = failures.empty();
  if (config.timings) report["wall_ms"] = wall;
  return report;
}

bool report_passed(const Json& report) { return report.value("all_pass", false); }

std::vector<std::string> failing_checks(const Json& report) {
  std::vector<std::string> out;
  for (const auto& c : report.at("checks"))
    if (c.at("status") == kFail) out.push_back(c.at("name").get<std::string>() + ": " + c.at("anchor").get<std::string>());
  return out;
}

}  // namespace ellassoc
