#include "ellassoc/json_io.hpp"

#include <algorithm>
#include <set>

#include "ellassoc/errors.hpp"

namespace ellassoc {

namespace {

constexpr int kMaxLoadTrivalent = 12;

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string at_key(const std::string& at, const std::string& key) { return at + "/" + escape(key); }
std::string at_index(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

const Json& require(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw LoadError(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw LoadError(at_key(at, key), "missing field");
  return *it;
}

const Json& require_array(const Json& obj, const std::string& key, const std::string& at) {
  const Json& v = require(obj, key, at);
  if (!v.is_array()) throw LoadError(at_key(at, key), "expected an array");
  return v;
}

int int_value(const Json& v, const std::string& at, int lo, int hi) {
  if (!v.is_number_integer()) throw LoadError(at, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw LoadError(at, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

int int_field(const Json& obj, const std::string& key, const std::string& at, int lo, int hi) {
  return int_value(require(obj, key, at), at_key(at, key), lo, hi);
}

std::string string_field(const Json& obj, const std::string& key, const std::string& at) {
  const Json& v = require(obj, key, at);
  if (!v.is_string()) throw LoadError(at_key(at, key), "expected a string");
  return v.get<std::string>();
}

Rational rational_field(const Json& obj, const std::string& key, const std::string& at) {
  const std::string text = string_field(obj, key, at);
  try {
    return parse_rational(text);
  } catch (const InvalidArgument& e) {
    throw LoadError(at_key(at, key), e.what());
  }
}

// ---- Lie series -----------------------------------------------------------------

Json bracket_tree(const Word& w, const std::vector<Generator>& alphabet) {
  if (w.size() == 1) return alphabet[w[0]].name;
  const auto [u, v] = standard_factorization(w);
  return Json::array({bracket_tree(u, alphabet), bracket_tree(v, alphabet)});
}

int tree_degree(const Json& t, const std::vector<Generator>& alphabet, const std::string& at, int cap) {
  int d = 0;
  if (t.is_string()) {
    const auto name = t.get<std::string>();
    auto it = std::find_if(alphabet.begin(), alphabet.end(), [&](const Generator& g) { return g.name == name; });
    if (it == alphabet.end()) throw LoadError(at, "unknown generator '" + name + "'");
    d = it->degree;
  } else if (t.is_array() && t.size() == 2) {
    d = tree_degree(t[0], alphabet, at_index(at, 0), cap) + tree_degree(t[1], alphabet, at_index(at, 1), cap);
  } else {
    throw LoadError(at, "a bracket is a generator name or a pair");
  }
  if (d > cap) throw LoadError(at, "bracket degree exceeds the truncation");
  return d;
}

FreePoly tree_poly(const Json& t, const std::vector<Generator>& alphabet, int truncation) {
  if (t.is_string()) {
    const auto name = t.get<std::string>();
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i].name == name) return letter(static_cast<int>(i));
  }
  return commutator(tree_poly(t[0], alphabet, truncation), tree_poly(t[1], alphabet, truncation), alphabet,
                    truncation);
}

std::vector<Generator> alphabet_from_json(const Json& j) {
  const Json& arr = require_array(j, "alphabet", "");
  if (arr.empty() || arr.size() > 15) throw LoadError("/alphabet", "alphabet needs 1 to 15 generators");
  std::vector<Generator> alphabet;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = at_index("/alphabet", i);
    Generator g{string_field(arr[i], "name", at), int_field(arr[i], "degree", at, 1, 15)};
    if (g.name.empty() || !seen.insert(g.name).second)
      throw LoadError(at_key(at, "name"), "generator names must be nonempty and distinct");
    alphabet.push_back(g);
  }
  return alphabet;
}

// ---- diagrams -------------------------------------------------------------------

std::vector<int> edge_ids(const Diagram& d) {
  std::vector<int> id(d.mate.size(), -1);
  int next = 0;
  for (std::size_t p = 0; p < d.mate.size(); ++p)
    if (id[p] < 0) id[p] = id[d.mate[p]] = next++;
  return id;
}

}  // namespace

Json lie_to_json(const LieSeries& s) {
  Json alphabet = Json::array();
  for (const auto& g : s.alphabet()) alphabet.push_back({{"name", g.name}, {"degree", g.degree}});
  Json terms = Json::array();
  for (int d = 1; d <= s.truncation(); ++d)
    for (const auto& [w, c] : s.part(d))
      terms.push_back({{"degree", d}, {"bracket", bracket_tree(w, s.alphabet())}, {"coeff", to_string(c)}});
  return {{"alphabet", alphabet}, {"truncation", s.truncation()}, {"terms", terms}};
}

LieSeries lie_from_json(const Json& j) {
  if (!j.is_object()) throw LoadError("", "expected an object");
  const auto alphabet = alphabet_from_json(j);
  const int truncation = int_field(j, "truncation", "", 1, 15);
  const Json& terms = require_array(j, "terms", "");
  FreePoly sum;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = at_index("/terms", i);
    const int degree = int_field(terms[i], "degree", at, 1, truncation);
    const Json& tree = require(terms[i], "bracket", at);
    if (tree_degree(tree, alphabet, at_key(at, "bracket"), truncation) != degree)
      throw LoadError(at_key(at, "degree"), "degree does not match the bracket");
    add_to(sum, rational_field(terms[i], "coeff", at), tree_poly(tree, alphabet, truncation));
  }
  return LieSeries::from_poly(alphabet, truncation, sum);
}

Json associator_to_json(const AssociatorSeries& phi) { return lie_to_json(phi.log_phi()); }

AssociatorSeries associator_from_json(const Json& j, std::vector<std::string>* warnings) {
  LieSeries log_phi = lie_from_json(j);
  if (log_phi.alphabet() != ab_alphabet())
    throw LoadError("/alphabet", "an associator uses the alphabet A, B of degree 1");
  const Json& terms = j.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].at("degree").get<int>() < 2)
      throw LoadError(at_key(at_index("/terms", i), "degree"), "log phi has no degree-1 part");
  if (terms.empty() && warnings)
    warnings->push_back("empty log phi: phi = 1, residuals will not vanish beyond degree 1");
  return AssociatorSeries(std::move(log_phi));
}

Json element_to_json(const AlgebraElement& a) {
  const TruncatedAlgebra& alg = a.algebra();
  Json terms = Json::array();
  for (int d = 0; d <= a.truncation(); ++d)
    for (const auto& [idx, c] : a.slice(d)) {
      Json word = Json::array();
      for (auto l : alg.word(d, idx)) word.push_back(alg.generators()[l].name);
      terms.push_back({{"word", word}, {"coeff", to_string(c)}});
    }
  return {{"algebra", alg.name()}, {"truncation", a.truncation()}, {"terms", terms}};
}

AlgebraElement element_from_json(const Json& j) {
  if (!j.is_object()) throw LoadError("", "expected an object");
  const std::string name = string_field(j, "algebra", "");
  const int truncation = int_field(j, "truncation", "", 0, 15);
  AlgebraPtr alg;
  try {
    alg = algebra_by_name(name, truncation);
  } catch (const InvalidArgument& e) {
    throw LoadError("/algebra", e.what());
  }
  AlgebraElement out(alg, truncation);
  const Json& terms = require_array(j, "terms", "");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = at_index("/terms", i);
    const Json& word = require_array(terms[i], "word", at);
    Word w;
    int degree = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
      const std::string lat = at_index(at_key(at, "word"), k);
      if (!word[k].is_string()) throw LoadError(lat, "expected a generator name");
      const int g = alg->generator_index(word[k].get<std::string>());
      if (g < 0) throw LoadError(lat, "unknown generator '" + word[k].get<std::string>() + "'");
      degree += alg->generators()[g].degree;
      if (degree > truncation) throw LoadError(lat, "word degree exceeds the truncation");
      w.push_back(static_cast<std::uint8_t>(g));
    }
    out.add_word(w, rational_field(terms[i], "coeff", at));
  }
  return out;
}

Json diagram_to_json(const Diagram& d) {
  const auto id = edge_ids(d);
  Json slots = Json::array();
  for (int s = 0; s < d.strands; ++s) {
    Json strand = Json::array();
    for (int i = 0; i < d.slot_counts[s]; ++i) strand.push_back(id[d.slot_port(s, i)]);
    slots.push_back(strand);
  }
  Json tri = Json::array();
  for (int v = 0; v < d.trivalent; ++v)
    tri.push_back({{"edges", {id[d.tri_port(v, 0)], id[d.tri_port(v, 1)], id[d.tri_port(v, 2)]}}});
  Json legs = Json::array();
  for (std::size_t k = 0; k < d.labels.size(); ++k)
    legs.push_back({{"label", std::string(1, label_char(d.labels[k]))},
                    {"order", static_cast<int>(k)},
                    {"edge", id[d.leg_port(static_cast<int>(k))]}});
  return {{"strands", d.strands}, {"slots", slots}, {"trivalent", tri}, {"legs", legs}};
}

std::optional<SignedDiagram> diagram_from_json(const Json& j) {
  if (!j.is_object()) throw LoadError("", "expected an object");
  RawDiagram raw;
  raw.strands = int_field(j, "strands", "", 1, 8);
  std::map<long long, std::vector<std::pair<int, std::string>>> ends;  // edge id -> (port, pointer)
  auto attach = [&](const Json& v, const std::string& at) {
    if (!v.is_number_integer()) throw LoadError(at, "edge ids are integers");
    const int port = raw.new_port();
    ends[v.get<long long>()].emplace_back(port, at);
    return port;
  };

  const Json& slots = require_array(j, "slots", "");
  if (static_cast<int>(slots.size()) != raw.strands) throw LoadError("/slots", "one slot list per strand");
  raw.slots.resize(raw.strands);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const std::string at = at_index("/slots", s);
    if (!slots[s].is_array()) throw LoadError(at, "expected an array");
    for (std::size_t i = 0; i < slots[s].size(); ++i) raw.slots[s].push_back(attach(slots[s][i], at_index(at, i)));
  }

  const Json& tri = j.contains("trivalent") ? require_array(j, "trivalent", "") : Json::array();
  if (tri.size() > kMaxLoadTrivalent) throw LoadError("/trivalent", "too many trivalent vertices");
  for (std::size_t v = 0; v < tri.size(); ++v) {
    const std::string at = at_index("/trivalent", v);
    const Json& edges = require_array(tri[v], "edges", at);
    if (edges.size() != 3) throw LoadError(at_key(at, "edges"), "a trivalent vertex has three edges");
    std::array<int, 3> corners{};
    for (int c = 0; c < 3; ++c) corners[c] = attach(edges[c], at_index(at_key(at, "edges"), c));
    raw.tri.push_back(corners);
  }

  const Json& legs = j.contains("legs") ? require_array(j, "legs", "") : Json::array();
  std::vector<std::pair<int, Leg>> ordered;
  std::set<int> orders;
  for (std::size_t k = 0; k < legs.size(); ++k) {
    const std::string at = at_index("/legs", k);
    const std::string label = string_field(legs[k], "label", at);
    if (label != "x" && label != "y") throw LoadError(at_key(at, "label"), "labels are x or y");
    const int order = int_field(legs[k], "order", at, 0, 1 << 20);
    if (!orders.insert(order).second) throw LoadError(at_key(at, "order"), "leg orders must be distinct");
    const int port = attach(require(legs[k], "edge", at), at_key(at, "edge"));
    ordered.push_back({order, Leg{label == "x" ? Label::X : Label::Y, port}});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [order, leg] : ordered) raw.legs.push_back(leg);

  for (const auto& [id, list] : ends) {
    if (list.size() != 2) throw LoadError(list.back().second, "edge " + std::to_string(id) + " needs exactly two ends");
    raw.connect(list[0].first, list[1].first);
  }

  std::optional<SignedDiagram> out;
  try {
    out = canonicalize(raw);
  } catch (const InvalidArgument& e) {
    throw LoadError("", e.what());
  }
  if (out && !pattern_connected(out->diagram)) throw LoadError("", "every component must reach a strand");
  return out;
}

Json diagram_element_to_json(const DiagramElement& e) {
  Json terms = Json::array();
  for (const auto& [d, c] : e.terms()) terms.push_back({{"coeff", to_string(c)}, {"diagram", diagram_to_json(d)}});
  return {{"terms", terms}};
}

DiagramElement diagram_element_from_json(const Json& j) {
  const Json& terms = require_array(j, "terms", "");
  DiagramElement out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = at_index("/terms", i);
    const Rational c = rational_field(terms[i], "coeff", at);
    std::optional<SignedDiagram> d;
    try {
      d = diagram_from_json(require(terms[i], "diagram", at));
    } catch (const LoadError& e) {
      throw LoadError(at_key(at, "diagram") + e.where(), e.what());
    }
    if (d) out.add(d->diagram, c * d->sign);
  }
  return out;
}

LieSeries free_element_to_lie(const AlgebraElement& a) {
  if (!a.algebra().is_free()) throw InvalidArgument("Lie coordinates need a free algebra");
  FreePoly p;
  for (int d = 0; d <= a.truncation(); ++d)
    for (const auto& [idx, c] : a.slice(d)) p[a.algebra().word(d, idx)] = c;
  return LieSeries::from_poly(a.algebra().generators(), a.truncation(), p);
}

Json elliptic_pair_to_json(const EllipticPair& pair, const AssociatorSeries& phi) {
  return {{"truncation", pair.x.truncation()},
          {"phi", associator_to_json(phi)},
          {"x", element_to_json(pair.x)},
          {"y", element_to_json(pair.y)},
          {"log_x", lie_to_json(free_element_to_lie(log(pair.x)))},
          {"log_y", lie_to_json(free_element_to_lie(log(pair.y)))}};
}

}  // namespace ellassoc
