// Acceptance gate: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--known-unattainable=3,...]
// Exit status is 0 exactly when the failing criteria are the declared
// known-unattainable ones; a declared criterion that passes is also an error,
// so the declaration cannot go stale silently.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "ellassoc/echelon.hpp"
#include "ellassoc/elliptic.hpp"
#include "ellassoc/json_io.hpp"
#include "ellassoc/lie.hpp"
#include "ellassoc/spaces.hpp"

using namespace ellassoc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + ELLASSOC_CLI_PATH + "\" " + args;
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// ---- independent evaluation of the associator equations ---------------------
//
// Polynomials in letters 0..k-1 (all of degree 1) as maps from strings of
// letter indices to coefficients. Residuals are formed in the free algebra on
// the t_ij and then tested for membership in the ideal of the infinitesimal
// braid relations, degree by degree.

using Poly = std::map<std::string, Rational>;

void add(Poly& p, const Poly& q, const Rational& c = 1) {
  for (const auto& [w, v] : q) {
    Rational& slot = p[w];
    slot += c * v;
    if (slot == 0) p.erase(w);
  }
}

Poly mul(const Poly& a, const Poly& b, int N) {
  Poly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b)
      if (static_cast<int>(u.size() + v.size()) <= N) add(out, {{u + v, x * y}});
  return out;
}

Poly one() { return {{"", 1}}; }

Poly exp_poly(const Poly& a, int N) {
  Poly out = one(), power = one();
  Rational fact = 1;
  for (int k = 1; k <= N; ++k) {
    power = mul(power, a, N);
    fact *= k;
    add(out, power, Rational(1) / fact);
  }
  return out;
}

// phi(a, b): letters 0 and 1 of `phi` replaced by `a` and `b`.
Poly substitute(const Poly& phi, const Poly& a, const Poly& b, int N) {
  Poly out;
  for (const auto& [w, c] : phi) {
    Poly term = one();
    for (char ch : w) term = mul(term, ch == 0 ? a : b, N);
    add(out, term, c);
  }
  return out;
}

Poly letter(int i) { return {{std::string(1, static_cast<char>(i)), 1}}; }

// Generators t_ij (i < j) of the Drinfeld-Kohno algebra on n strands.
struct DkAlphabet {
  int n;
  std::map<std::pair<int, int>, int> index;
  explicit DkAlphabet(int n_) : n(n_) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const int k = static_cast<int>(index.size());
        index[{i, j}] = k;
      }
  }
  Poly t(int i, int j) const { return letter(index.at({std::min(i, j), std::max(i, j)})); }
  int letters() const { return static_cast<int>(index.size()); }
  std::vector<Poly> relations() const {
    std::vector<Poly> rels;
    auto comm = [](const Poly& a, const Poly& b) {
      Poly out = mul(a, b, 2);
      add(out, mul(b, a, 2), -1);
      return out;
    };
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          if (k == i || k == j) continue;
          Poly s = t(i, k);
          add(s, t(j, k));
          rels.push_back(comm(t(i, j), s));
          for (int l = k + 1; l <= n; ++l)
            if (l != i && l != j) rels.push_back(comm(t(i, j), t(k, l)));
        }
    return rels;
  }
};

// Nonzero count per degree of the class of `p` in U(t_n) / (degree > N).
std::vector<int> residual_counts(const Poly& p, const DkAlphabet& alpha, int N) {
  const int L = alpha.letters();
  auto column = [&](const std::string& w) {
    int c = 0;
    for (char ch : w) c = c * L + ch;
    return c;
  };
  std::vector<std::vector<std::string>> words(N + 1);
  words[0] = {""};
  for (int d = 1; d <= N; ++d)
    for (const auto& w : words[d - 1])
      for (int l = 0; l < L; ++l) words[d].push_back(w + static_cast<char>(l));
  const auto rels = alpha.relations();
  std::vector<int> counts(N + 1, 0);
  for (int d = 0; d <= N; ++d) {
    int cols = 1;
    for (int i = 0; i < d; ++i) cols *= L;
    Echelon ideal(cols);
    for (int a = 0; a + 2 <= d; ++a)
      for (const auto& u : words[a])
        for (const auto& v : words[d - 2 - a])
          for (const auto& r : rels) {
            SparseVec row;
            for (const auto& [w, c] : r) row[column(u + w + v)] += c;
            ideal.insert(row);
          }
    SparseVec target;
    for (const auto& [w, c] : p)
      if (static_cast<int>(w.size()) == d) target[column(w)] = c;
    ideal.reduce(target);
    counts[d] = static_cast<int>(target.size());
  }
  return counts;
}

Poly from_free(const FreePoly& p) {
  Poly out;
  for (const auto& [w, c] : p) out[std::string(w.begin(), w.end())] = c;
  return out;
}

Poly pentagon(const Poly& phi, int N) {
  const DkAlphabet a(4);
  auto sum = [](Poly x, const Poly& y) {
    add(x, y);
    return x;
  };
  auto f = [&](const Poly& x, const Poly& y) { return substitute(phi, x, y, N); };
  Poly lhs = mul(f(a.t(1, 2), sum(a.t(2, 3), a.t(2, 4))), f(sum(a.t(1, 3), a.t(2, 3)), a.t(3, 4)), N);
  const Poly rhs = mul(mul(f(a.t(2, 3), a.t(3, 4)), f(sum(a.t(1, 2), a.t(1, 3)), sum(a.t(2, 4), a.t(3, 4))), N),
                       f(a.t(1, 2), a.t(2, 3)), N);
  add(lhs, rhs, -1);
  return lhs;
}

// exp(s (t13 + t23) / 2) = phi(t13, t12) exp(s t13 / 2) phi(t13, t23)^-1 exp(s t23 / 2) phi(t12, t23)
Poly hexagon(const Poly& phi, const Poly& phi_inv, int s, int N) {
  const DkAlphabet a(3);
  const Rational half(s, 2);
  auto scaled = [](const Poly& x, const Rational& c) {
    Poly out;
    add(out, x, c);
    return out;
  };
  Poly t13_t23 = a.t(1, 3);
  add(t13_t23, a.t(2, 3));
  Poly lhs = exp_poly(scaled(t13_t23, half), N);
  Poly rhs = substitute(phi, a.t(1, 3), a.t(1, 2), N);
  rhs = mul(rhs, exp_poly(scaled(a.t(1, 3), half), N), N);
  rhs = mul(rhs, substitute(phi_inv, a.t(1, 3), a.t(2, 3), N), N);
  rhs = mul(rhs, exp_poly(scaled(a.t(2, 3), half), N), N);
  rhs = mul(rhs, substitute(phi, a.t(1, 2), a.t(2, 3), N), N);
  add(lhs, rhs, -1);
  return lhs;
}

bool all_zero(const std::vector<int>& v) {
  for (int x : v)
    if (x) return false;
  return true;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 1; i < v.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(v[i]);
  return s;
}

// Degree-2 coefficient c of log phi = c [A, B] solving the degree-2 hexagon,
// from the independent evaluator. By hand: modulo the relations the residual
// is (3c - 1/8) [t13, t23], so c = 1/24.
Rational degree_two_oracle() {
  const DkAlphabet a(3);
  auto residual_slice = [&](const Rational& c) {
    Poly log_phi{{std::string{0, 1}, c}, {std::string{1, 0}, -c}};
    Poly neg = log_phi;
    for (auto& [w, v] : neg) v = -v;
    const Poly r = hexagon(exp_poly(log_phi, 2), exp_poly(neg, 2), 1, 2);
    Poly deg2;
    for (const auto& [w, v] : r)
      if (w.size() == 2) deg2[w] = v;
    return deg2;
  };
  // Reduce r(0) and r(1) - r(0) modulo the degree-2 ideal and solve r(0) + c (r(1) - r(0)) = 0.
  auto reduce = [&](const Poly& p) {
    const int L = a.letters();
    Echelon ideal(L * L);
    for (const auto& r : a.relations()) {
      SparseVec row;
      for (const auto& [w, c] : r) row[w[0] * L + w[1]] += c;
      ideal.insert(row);
    }
    SparseVec v;
    for (const auto& [w, c] : p) v[w[0] * L + w[1]] += c;
    ideal.reduce(v);
    return v;
  };
  const SparseVec r0 = reduce(residual_slice(0));
  SparseVec slope = reduce(residual_slice(1));
  axpy(slope, -1, r0);
  if (slope.empty()) return -1;
  const auto& [col, s] = *slope.begin();
  const Rational c = r0.count(col) ? Rational(-r0.at(col) / s) : Rational(0);
  SparseVec check = r0;
  axpy(check, c, slope);
  return check.empty() ? c : Rational(-1);
}

// ---- criteria ---------------------------------------------------------------

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome criterion1(const fs::path& work) {
  const fs::path out = work / "phi.json";
  const auto t0 = Clock::now();
  const int rc = run_cli("assoc solve --max-degree 4 --even --out \"" + out.string() + "\"");
  const long long ms = ms_since(t0);
  if (rc != 0) return {false, "solve exited with " + std::to_string(rc)};
  const AssociatorSeries phi = associator_from_json(Json::parse(read_file(out)));
  const int N = 4;
  Poly log_phi = from_free(phi.log_phi().to_poly());
  Poly neg = log_phi;
  for (auto& [w, v] : neg) v = -v;
  const Poly P = exp_poly(log_phi, N), Pinv = exp_poly(neg, N);
  const auto pent = residual_counts(pentagon(P, N), DkAlphabet(4), N);
  const auto hplus = residual_counts(hexagon(P, Pinv, 1, N), DkAlphabet(3), N);
  const auto hminus = residual_counts(hexagon(P, Pinv, -1, N), DkAlphabet(3), N);
  const Rational c = phi.log_phi().coefficient({0, 1});
  const Rational oracle = degree_two_oracle();
  const bool pass = ms < 60000 && all_zero(pent) && all_zero(hplus) && all_zero(hminus) && c == oracle &&
                    oracle == Rational(1, 24);
  return {pass, "solve " + std::to_string(ms) + " ms; nonzero by degree pentagon [" + join(pent) + "] hexagon+ [" +
                    join(hplus) + "] hexagon- [" + join(hminus) + "]; [A,B] coefficient " + to_string(c) +
                    ", oracle " + to_string(oracle)};
}

Outcome criterion2() {
  const int N = 4;
  const auto t0 = Clock::now();
  const AssociatorSeries phi = solve_associator({N, true, Gauge::kLyndonAscending});
  const EllipticPair pair = build_e_phi(phi, N);
  std::string detail;
  bool pass = true;
  for (int k = 1; k <= kEllipticIdentities; ++k) {
    const auto counts = elliptic_residual(pair, phi, k, N).nonzero_counts();
    pass = pass && all_zero(counts);
    detail += "identity" + std::to_string(k) + " [" + join(counts) + "] ";
  }
  LieSeries flipped = phi.log_phi();
  flipped.add_term({0, 1}, -2 * flipped.coefficient({0, 1}));
  const AssociatorSeries bad(flipped);
  const EllipticPair bad_pair = build_e_phi(bad, N);
  bool detected = false;
  for (int k = 1; k <= kEllipticIdentities; ++k) detected = detected || !elliptic_residual(bad_pair, bad, k, N).is_zero();
  const long long ms = ms_since(t0);
  pass = pass && detected && ms < 600000;
  return {pass, detail + "; flipped degree-2 sign detected: " + (detected ? "yes" : "no") + "; " + std::to_string(ms) +
                    " ms"};
}

Outcome criterion3() {
  bool relations_ok = true, mult_ok = true;
  std::string detail;
  for (int n = 2; n <= 3; ++n) {
    std::map<RelationKind, std::pair<int, int>> tally;
    for (const auto& row : umap_relation_images(n, 4)) {
      tally[row.kind].first += row.nonzero;
      tally[row.kind].second += row.elements;
      relations_ok = relations_ok && row.nonzero == 0;
    }
    detail += "n=" + std::to_string(n) + " nonzero relation images:";
    for (const auto& [kind, t] : tally)
      detail += " " + to_string(kind) + " " + std::to_string(t.first) + "/" + std::to_string(t.second);
    detail += "; multiplicativity failures (mod diagonal ideal):";
    for (int d = 2; d <= 4; ++d) {
      const auto m = umap_multiplicativity(n, d, 100, 20240 + 10 * n + d);
      mult_ok = mult_ok && m.failures == 0;
      detail += " d" + std::to_string(d) + " " + std::to_string(m.failures) + "/" + std::to_string(m.pairs) + " (" +
                std::to_string(m.failures_mod_diagonal) + ")";
    }
    detail += "; ";
  }
  return {relations_ok && mult_ok, detail};
}

Outcome criterion4() {
  bool pass = true;
  std::string detail;
  auto run = [&](int n, int D, bool required) {
    for (const auto& r : isomorphism_report(n, D)) {
      bool ok = r.well_defined && r.injective && r.surjective;
      if (n == 2) ok = ok && r.words == (1 << r.degree) && r.target_dim == (1 << r.degree) && r.rank_diagrams == r.words;
      if (required) pass = pass && ok;
      detail += "n=" + std::to_string(n) + " d=" + std::to_string(r.degree) + " rank " + std::to_string(r.rank_diagrams) +
                "/" + std::to_string(r.target_dim) + (ok ? "" : " (fail)") + (required ? "" : " (stretch)") + "; ";
    }
  };
  run(2, 4, true);
  run(3, 3, true);
  // Stretch goal: degree 5 for two strands, reported but not required.
  const auto t0 = Clock::now();
  const auto rows = isomorphism_report(2, 5);
  const auto& r5 = rows.back();
  detail += "stretch n=2 d=5 rank " + std::to_string(r5.rank_diagrams) + "/" + std::to_string(r5.target_dim) + " in " +
            std::to_string(ms_since(t0)) + " ms";
  return {pass, detail};
}

Outcome criterion5() {
  int checked = 0, bad = 0;
  for (int n = 2; n <= 3; ++n)
    for (int d = 1; d <= 4; ++d) {
      const auto full = slice({DiagramClass::kFull, n, d});
      for (const auto& D : enumerate({DiagramClass::kFull, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto p = phi_normalize(e);
        ++checked;
        if (!full->is_zero(p - e) || !(phi_normalize(p) == p)) ++bad;
      }
      const auto R = slice({DiagramClass::kR, n, d});
      for (const auto& D : enumerate({DiagramClass::kR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto g = gamma_normalize(e);
        bool ok = R->is_zero(g - e) && gamma_normalize(g) == g;
        for (const auto& [x, c] : g.terms()) ok = ok && x.trivalent == 0;
        ++checked;
        if (!ok) ++bad;
      }
      const auto H = slice({DiagramClass::kSRmodH, n, d});
      for (const auto& D : enumerate({DiagramClass::kSR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto b = beta_normalize(e);
        bool ok = H->is_zero(mod_h(b) - mod_h(e)) && beta_normalize(b) == b;
        for (const auto& [x, c] : b.terms()) ok = ok && is_ordered(x);
        ++checked;
        if (!ok) ++bad;
      }
      if (n == 3 && d <= 3)
        for (const auto& D : enumerate({DiagramClass::kOSR, n, d})) {
          const auto e = DiagramElement::of(D);
          const auto a = alpha_normalize(e);
          bool ok = H->is_zero(mod_h(a) - mod_h(e)) && alpha_normalize(a) == a;
          for (const auto& [x, c] : a.terms()) ok = ok && is_fully_ordered(x);
          ++checked;
          if (!ok) ++bad;
        }
    }
  return {bad == 0, std::to_string(checked) + " diagram checks, " + std::to_string(bad) + " failures"};
}

Outcome criterion6() {
  const int N = 4;
  const auto alg = t1n(2, N);
  const auto x = AlgebraElement::generator(alg, N, "x1"), y = AlgebraElement::generator(alg, N, "y1");
  AlgebraElement xt(alg, N), ad = x;
  DiagramElement chains;
  Rational fact = 1;
  for (int i = 0; i < N; ++i) {
    if (i) {
      ad = commutator(y, ad);
      fact *= i;
    }
    // (ad y)/(e^{ad y} - 1) = sum_i B_i / i! (ad y)^i
    xt += (bernoulli(i) / fact) * ad;
    chains.add(chain_diagram(i), bernoulli(i) / fact);
  }
  const DiagramElement diff = mod_h(u_map(xt, 2)) - mod_h(gamma_normalize(chains));
  std::string detail = "nonzero coordinates by degree:";
  bool pass = true;
  for (int d = 1; d <= N; ++d) {
    DiagramElement part;
    for (const auto& [D, c] : diff.terms())
      if (D.degree() == d) part.add(D, c);
    const auto coords = slice({DiagramClass::kSRmodH, 2, d})->coordinates(part);
    pass = pass && coords.empty();
    detail += " " + std::to_string(coords.size());
  }
  return {pass, detail};
}

// Akiyama-Tanigawa; yields B_1 = +1/2, other values agree with the usual convention.
std::vector<Rational> bernoulli_oracle(int n) {
  std::vector<Rational> out, a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  out[1] = -out[1];
  return out;
}

Outcome criterion7() {
  // Scan the test sources for floating-point types and approximate comparisons.
  const std::regex banned(R"(\b(float|double|Approx)\b|\d\.\d*[eE][-+]?\d)");  // scan-exempt
  std::vector<std::string> hits;
  for (const auto& entry : fs::directory_iterator(ELLASSOC_TEST_DIR)) {
    if (entry.path().extension() != ".cpp") continue;
    std::istringstream in(read_file(entry.path()));
    std::string line;
    for (int no = 1; std::getline(in, line); ++no)
      if (line.find("scan-exempt") == std::string::npos && std::regex_search(line, banned))
        hits.push_back(entry.path().filename().string() + ":" + std::to_string(no));
  }

  const int N = 6;
  auto alg = free_ab(N);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coeff(-2, 2);
  int trips = 0, trip_failures = 0;
  for (int trial = 0; trial < 5; ++trial) {
    LieSeries a(ab_alphabet(), N), b(ab_alphabet(), N);
    for (int d = 1; d <= N; ++d)
      for (const Word& w : lyndon_basis(ab_alphabet(), d)) {
        a.add_term(w, make_rational(coeff(rng), d));
        b.add_term(w, make_rational(coeff(rng), d + 1));
      }
    const auto A = AlgebraElement::from_poly(alg, N, a.to_poly());
    const auto B = AlgebraElement::from_poly(alg, N, b.to_poly());
    const auto C = AlgebraElement::from_poly(alg, N, bch(a, b).to_poly());
    trips += 4;
    if (!(exp(C) == exp(A) * exp(B))) ++trip_failures;
    if (!(log(exp(A)) == A)) ++trip_failures;
    if (!(exp(log(exp(B))) == exp(B))) ++trip_failures;
    if (!(inverse(exp(A)) == exp(-A))) ++trip_failures;
  }

  const auto oracle = bernoulli_oracle(12);
  int bern_bad = 0;
  for (int n = 0; n <= 12; ++n)
    if (bernoulli(n) != oracle[n]) ++bern_bad;

  std::string detail = std::to_string(hits.size()) + " floating-point hits";
  for (const auto& h : hits) detail += " " + h;
  detail += "; " + std::to_string(trips - trip_failures) + "/" + std::to_string(trips) +
            " exact round trips through degree 6; bernoulli mismatches for n <= 12: " + std::to_string(bern_bad);
  return {hits.empty() && trip_failures == 0 && bern_bad == 0, detail};
}

Outcome criterion8(const fs::path& work) {
  const fs::path config = work / "config.json";
  std::ofstream(config) << R"({"phi": {"source": "solve", "max_degree": 4, "even": true}})";
  const fs::path r1 = work / "report1.json", r2 = work / "report2.json";
  const int rc1 = run_cli("report run --config \"" + config.string() + "\" --out \"" + r1.string() + "\"");
  const int rc2 = run_cli("report run --config \"" + config.string() + "\" --out \"" + r2.string() + "\"");
  const std::string a = read_file(r1), b = read_file(r2);
  const bool same = !a.empty() && a == b;
  return {same, "exit codes " + std::to_string(rc1) + ", " + std::to_string(rc2) + "; " + std::to_string(a.size()) +
                    " bytes; identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::size_t> declared;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const std::string prefix = "--known-unattainable=";
    if (arg.rfind(prefix, 0) != 0) {
      std::cerr << "usage: acceptance [--known-unattainable=N,...]\n";
      return 2;
    }
    std::stringstream list(arg.substr(prefix.size()));
    for (std::string item; std::getline(list, item, ',');) declared.insert(std::stoul(item));
  }
  const fs::path work = fs::temp_directory_path() / ("ellassoc-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(work);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"associator solve and independent residuals", [&] { return criterion1(work); }},
      {"elliptic identities", criterion2},
      {"u-map relations and multiplicativity", criterion3},
      {"u~ isomorphism ranks", criterion4},
      {"normalizer equivalence", criterion5},
      {"chain identity", criterion6},
      {"exact arithmetic hygiene", criterion7},
      {"report determinism", [&] { return criterion8(work); }},
  };
  int failed = 0;
  std::set<std::size_t> failing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) {
      ++failed;
      failing.insert(i + 1);
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << ms_since(t0) << " ms) - " << o.detail << std::endl;
  }
  fs::remove_all(work);
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  if (failing == declared) {
    if (!declared.empty()) std::cout << "every failure is a declared known-unattainable criterion" << std::endl;
    return 0;
  }
  for (std::size_t c : declared)
    if (!failing.count(c)) std::cout << "criterion " << c << " is declared unattainable but passed" << std::endl;
  return 1;
}
