#include "ellassoc/spaces.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <tuple>

#include "ellassoc/errors.hpp"

namespace ellassoc {

std::string to_string(DiagramClass c) {
  switch (c) {
    case DiagramClass::kFull: return "full";
    case DiagramClass::kR: return "R";
    case DiagramClass::kSR: return "SR";
    case DiagramClass::kSRmodH: return "SRmodH";
    case DiagramClass::kOSR: return "OSR";
    case DiagramClass::kFOSR: return "FOSR";
  }
  return "?";
}

DiagramClass parse_diagram_class(std::string_view name) {
  for (auto c : {DiagramClass::kFull, DiagramClass::kR, DiagramClass::kSR, DiagramClass::kSRmodH,
                 DiagramClass::kOSR, DiagramClass::kFOSR})
    if (to_string(c) == name) return c;
  throw InvalidArgument("unknown diagram class '" + std::string(name) + "'");
}

namespace {

struct SlotInfo {
  int strand;
  int pos;
};

// Strand and position of every slot port of a canonical diagram.
std::vector<SlotInfo> slot_table(const Diagram& d) {
  std::vector<SlotInfo> out;
  for (int s = 0; s < d.strands; ++s)
    for (int i = 0; i < d.slot_counts[s]; ++i) out.push_back({s, i});
  return out;
}

// For chord-only diagrams: the slot carrying each leg.
std::vector<SlotInfo> leg_slots(const Diagram& d) {
  const auto table = slot_table(d);
  std::vector<SlotInfo> out;
  for (std::size_t r = 0; r < d.labels.size(); ++r) {
    const int q = d.mate[d.leg_port(static_cast<int>(r))];
    if (q >= d.slot_total()) throw InvalidArgument("leg not attached to a strand");
    out.push_back(table[q]);
  }
  return out;
}

bool simple(const Diagram& d) { return d.trivalent == 0; }

}  // namespace

bool in_h(const Diagram& d) { return simple(d) && has_same_strand_chord(d); }

bool is_ordered(const Diagram& d) {
  if (!simple(d)) return false;
  const auto legs = leg_slots(d);
  for (std::size_t a = 0; a < legs.size(); ++a)
    for (std::size_t b = a + 1; b < legs.size(); ++b)
      if (legs[a].strand == legs[b].strand && legs[a].pos > legs[b].pos) return false;
  return true;
}

bool is_fully_ordered(const Diagram& d) {
  if (d.strands != 3 || !is_ordered(d)) return false;
  const auto legs = leg_slots(d);
  bool seen_second = false;
  for (const auto& l : legs) {
    if (l.strand == 1) seen_second = true;
    if (l.strand == 0 && seen_second) return false;
  }
  // Strand-1 ends of 1-2 chords sit above every strand-1 labeled edge.
  const int first_strand = d.slot_counts[0];
  int highest_labeled = -1;
  int lowest_chord = first_strand;
  for (int p = 0; p < first_strand; ++p) {
    const int q = d.mate[p];
    if (q >= d.slot_total()) highest_labeled = std::max(highest_labeled, p);
    else if (q >= first_strand) lowest_chord = std::min(lowest_chord, p);
  }
  return highest_labeled < lowest_chord;
}

bool in_class(const Diagram& d, DiagramClass cls) {
  const bool r = d.slot_counts.back() == 0 || d.strands == 0;
  switch (cls) {
    case DiagramClass::kFull: return true;
    case DiagramClass::kR: return r;
    case DiagramClass::kSR: return r && simple(d);
    case DiagramClass::kSRmodH: return r && simple(d) && !in_h(d);
    case DiagramClass::kOSR: return r && simple(d) && !in_h(d) && is_ordered(d);
    case DiagramClass::kFOSR: return r && simple(d) && !in_h(d) && is_fully_ordered(d);
  }
  return false;
}

namespace {

bool sr_family(DiagramClass c) {
  return c == DiagramClass::kSR || c == DiagramClass::kSRmodH || c == DiagramClass::kOSR ||
         c == DiagramClass::kFOSR;
}

void check_spec(const SpaceSpec& spec) {
  if (spec.strands < 1 || spec.strands > 4) throw InvalidArgument("strands must lie in [1, 4]");
  if (spec.degree < 0 || spec.degree > 6) throw InvalidArgument("degree must lie in [0, 6]");
  if (spec.cls == DiagramClass::kFOSR && spec.strands != 3)
    throw InvalidArgument("FOSR is defined for three strands");
  if (spec.cls != DiagramClass::kFull && spec.strands < 2)
    throw InvalidArgument("restricted classes need at least two strands");
}

std::vector<Diagram> enumerate_raw(DiagramClass cls, int strands, int degree) {
  EnumerationFilter f;
  f.strands = strands;
  f.degree = degree;
  f.rightmost_strand_empty = cls != DiagramClass::kFull;
  f.max_trivalent = sr_family(cls) ? 0 : -1;
  return enumerate_diagrams(f);
}

}  // namespace

std::vector<Diagram> enumerate(const SpaceSpec& spec) {
  check_spec(spec);
  std::vector<Diagram> out;
  for (auto& d : enumerate_raw(spec.cls, spec.strands, spec.degree))
    if (in_class(d, spec.cls)) out.push_back(std::move(d));
  return out;
}

namespace {

DiagramElement stu_relation(const Diagram& d, int vertex, int corner) {
  const RawDiagram raw = to_raw(d);
  auto [plus, minus] = expand_vertex(raw, vertex, corner);
  DiagramElement rel = DiagramElement::of(d);
  rel.add(plus, -1);
  rel.add(minus, 1);
  return rel;
}

bool corner_on_strand(const Diagram& d, int vertex, int corner) {
  return d.mate[d.tri_port(vertex, corner)] < d.slot_total();
}

void add_stu_relations(const Diagram& d, std::vector<DiagramElement>& out) {
  for (int v = 0; v < d.trivalent; ++v)
    for (int c = 0; c < 3; ++c)
      if (corner_on_strand(d, v, c)) out.push_back(stu_relation(d, v, c));
}

void add_ihx_relations(const Diagram& d, std::vector<DiagramElement>& out) {
  const RawDiagram raw = to_raw(d);
  const int base = d.fixed_ports();
  for (int u = 0; u < d.trivalent; ++u)
    for (int a = 0; a < 3; ++a) {
      const int q = d.mate[d.tri_port(u, a)];
      if (q < base) continue;
      const int v = (q - base) / 3;
      const int b = (q - base) % 3;
      if (v <= u) continue;
      const auto& tu = raw.tri[u];
      const auto& tv = raw.tri[v];
      const int eu = tu[a], u1 = tu[(a + 1) % 3], u2 = tu[(a + 2) % 3];
      const int ev = tv[b], v1 = tv[(b + 1) % 3], v2 = tv[(b + 2) % 3];
      RawDiagram h = raw, x = raw;
      h.tri[u] = {u2, v1, eu};
      h.tri[v] = {ev, v2, u1};
      x.tri[u] = {u2, v2, eu};
      x.tri[v] = {ev, v1, u1};
      DiagramElement rel = DiagramElement::of(d);
      rel.add(h, -1);
      rel.add(x, 1);
      out.push_back(std::move(rel));
    }
}

// D(v over w) - D(w over v) - <v,w> C, with v the upper of two adjacent labels.
void add_stu_like_relations(const Diagram& d, std::vector<DiagramElement>& out) {
  const RawDiagram raw = to_raw(d);
  for (int r = 0; r + 1 < static_cast<int>(d.labels.size()); ++r) {
    DiagramElement rel = DiagramElement::of(d);
    rel.add(swap_legs(raw, r), -1);
    rel.add(contract_legs(raw, r), -pairing(d.labels[r + 1], d.labels[r]));
    out.push_back(std::move(rel));
  }
}

// Two STU expansions of one tripod vertex agree.
void add_four_term_relations(const SpaceSpec& spec, std::vector<DiagramElement>& out) {
  EnumerationFilter f{spec.strands, spec.degree, true, 1};
  for (const Diagram& d : enumerate_diagrams(f)) {
    if (d.trivalent != 1) continue;
    const RawDiagram raw = to_raw(d);
    std::vector<DiagramElement> expansions;
    for (int c = 0; c < 3; ++c) {
      if (!corner_on_strand(d, 0, c)) continue;
      auto [plus, minus] = expand_vertex(raw, 0, c);
      DiagramElement e;
      e.add(plus, 1);
      e.add(minus, -1);
      expansions.push_back(std::move(e));
    }
    for (std::size_t i = 1; i < expansions.size(); ++i) out.push_back(expansions[0] - expansions[i]);
  }
}

std::vector<DiagramElement> base_relations(DiagramClass cls, int strands, int degree) {
  std::vector<DiagramElement> out;
  const auto diagrams = enumerate_raw(cls, strands, degree);
  if (!sr_family(cls)) {
    for (const auto& d : diagrams) {
      add_stu_relations(d, out);
      add_stu_like_relations(d, out);
      if (cls == DiagramClass::kFull) add_ihx_relations(d, out);
    }
    return out;
  }
  for (const auto& d : diagrams) add_stu_like_relations(d, out);
  add_four_term_relations({cls, strands, degree}, out);
  if (cls != DiagramClass::kSR)
    for (const auto& d : diagrams)
      if (in_h(d)) out.push_back(DiagramElement::of(d));
  return out;
}

// Column order: the largest column of a row is its pivot, so diagrams that
// should leave the basis sort last.
std::tuple<int, int, int, int> column_key(const Diagram& d, DiagramClass cls) {
  if (!sr_family(cls)) return {d.trivalent, static_cast<int>(d.labels.size()), 0, 0};
  const bool h = in_h(d);
  const bool ordered = !h && is_ordered(d);
  const bool full = ordered && d.strands == 3 && is_fully_ordered(d);
  return {h ? 1 : 0, ordered ? 0 : 1, (d.strands == 3 && !full) ? 1 : 0, 0};
}

}  // namespace

SpaceSlice::SpaceSlice(const SpaceSpec& spec) : spec_(spec) {
  check_spec(spec);
  columns_ = enumerate_raw(spec.cls, spec.strands, spec.degree);
  std::stable_sort(columns_.begin(), columns_.end(), [&](const Diagram& a, const Diagram& b) {
    return column_key(a, spec.cls) < column_key(b, spec.cls);
  });
  for (std::size_t i = 0; i < columns_.size(); ++i) column_of_.emplace(columns_[i], static_cast<int>(i));
  echelon_ = Echelon(static_cast<int>(columns_.size()));
  for (const auto& rel : base_relations(spec.cls, spec.strands, spec.degree)) {
    SparseVec v;
    for (const auto& [d, c] : rel.terms()) {
      auto it = column_of_.find(d);
      if (it == column_of_.end()) throw InternalError("relation term outside its slice");
      v.emplace(it->second, c);
    }
    echelon_.insert(std::move(v));
  }
  echelon_.interreduce();
  for (int col : echelon_.free_columns()) {
    if (!in_class(columns_[col], spec.cls)) {
      if (spec.cls == DiagramClass::kOSR || spec.cls == DiagramClass::kFOSR) continue;
      throw InternalError("basis diagram outside its class");
    }
    basis_index_.emplace(col, static_cast<int>(basis_.size()));
    basis_.push_back(columns_[col]);
  }
}

SparseVec SpaceSlice::coordinates(const DiagramElement& e) const {
  SparseVec v;
  for (const auto& [d, c] : e.terms()) {
    auto it = column_of_.find(d);
    const bool allowed = it != column_of_.end() &&
                         (spec_.cls == DiagramClass::kSR || spec_.cls == DiagramClass::kSRmodH ||
                          in_class(d, spec_.cls) || in_h(d));
    if (!allowed) throw InvalidArgument("diagram outside the " + to_string(spec_.cls) + " slice");
    v.emplace(it->second, c);
  }
  echelon_.reduce(v);
  SparseVec out;
  for (const auto& [col, c] : v) {
    auto it = basis_index_.find(col);
    if (it == basis_index_.end()) throw InternalError("reduction left the class basis");
    out.emplace(it->second, c);
  }
  return out;
}

std::vector<DiagramElement> relation_elements(const SpaceSpec& spec) {
  check_spec(spec);
  if (spec.cls != DiagramClass::kOSR && spec.cls != DiagramClass::kFOSR)
    return base_relations(spec.cls, spec.strands, spec.degree);
  // Relations among (fully) ordered diagrams: the part of the SR-modulo-H
  // relation span supported on the class, read off the shared echelon form.
  std::vector<DiagramElement> out;
  std::vector<Diagram> sorted = enumerate_raw(DiagramClass::kSR, spec.strands, spec.degree);
  Echelon e(static_cast<int>(sorted.size()));
  std::map<Diagram, int> col;
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Diagram& a, const Diagram& b) {
    return column_key(a, spec.cls) < column_key(b, spec.cls);
  });
  for (std::size_t i = 0; i < sorted.size(); ++i) col.emplace(sorted[i], static_cast<int>(i));
  for (const auto& rel : base_relations(DiagramClass::kSRmodH, spec.strands, spec.degree)) {
    SparseVec v;
    for (const auto& [d, c] : rel.terms()) v.emplace(col.at(d), c);
    e.insert(std::move(v));
  }
  for (const auto& row : e.rows()) {
    bool inside = true;
    for (const auto& [c, val] : row)
      if (!in_class(sorted[c], spec.cls) && !in_h(sorted[c])) inside = false;
    if (!inside) continue;
    DiagramElement rel;
    for (const auto& [c, val] : row) rel.add(sorted[c], val);
    out.push_back(std::move(rel));
  }
  return out;
}

std::shared_ptr<const SpaceSlice> slice(const SpaceSpec& spec) {
  static std::mutex m;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const SpaceSlice>> cache;
  const auto key = std::make_tuple(static_cast<int>(spec.cls), spec.strands, spec.degree);
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const SpaceSlice>(spec);
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(key, built).first->second;
}

// ---------------------------------------------------------------------------

namespace {

int strand_digit(char c, int strands, const std::string& letter) {
  const int s = c - '0';
  if (s < 1 || s > strands) throw InvalidArgument("letter '" + letter + "' names a missing strand");
  return s - 1;
}

}  // namespace

RawDiagram word_diagram(const std::vector<std::string>& letters, int strands) {
  RawDiagram raw;
  raw.strands = strands;
  raw.slots.resize(strands);
  for (const auto& l : letters) {
    if (l.size() == 2 && (l[0] == 'x' || l[0] == 'y')) {
      const int s = strand_digit(l[1], strands, l);
      const int slot = raw.new_port();
      const int leg = raw.new_port();
      raw.connect(slot, leg);
      raw.slots[s].push_back(slot);
      raw.legs.push_back({l[0] == 'x' ? Label::X : Label::Y, leg});
    } else if (l.size() == 3 && l[0] == 't' && l[1] != l[2]) {
      const int a = strand_digit(l[1], strands, l);
      const int b = strand_digit(l[2], strands, l);
      const int pa = raw.new_port();
      const int pb = raw.new_port();
      raw.connect(pa, pb);
      raw.slots[a].push_back(pa);
      raw.slots[b].push_back(pb);
    } else {
      throw InvalidArgument("letter '" + l + "' has no diagram image");
    }
  }
  return raw;
}

DiagramElement u_map(const AlgebraElement& a, int strands) {
  const TruncatedAlgebra& alg = a.algebra();
  DiagramElement out;
  for (int d = 0; d <= a.truncation(); ++d)
    for (const auto& [idx, c] : a.slice(d)) {
      std::vector<std::string> letters;
      for (auto l : alg.word(d, idx)) letters.push_back(alg.generators()[l].name);
      out.add(word_diagram(letters, strands), c);
    }
  return out;
}

DiagramElement mod_h(const DiagramElement& e) {
  DiagramElement out;
  for (const auto& [d, c] : e.terms()) {
    if (d.trivalent) throw InvalidArgument("mod_h needs chord diagrams; apply gamma_normalize first");
    if (!has_same_strand_chord(d)) out.add(d, c);
  }
  return out;
}

namespace {

constexpr long kRewriteCap = 5'000'000;

// Applies `step` until every term is a fixed point. `step` returns the
// replacement of a term, or nothing when the term is final.
DiagramElement rewrite(const DiagramElement& e,
                       const std::function<std::optional<DiagramElement>(const Diagram&)>& step) {
  DiagramElement pending = e;
  DiagramElement done;
  long steps = 0;
  while (!pending.is_zero()) {
    if (++steps > kRewriteCap) throw InternalError("normalizer did not terminate");
    auto it = std::prev(pending.terms().end());
    const Diagram d = it->first;
    const Rational c = it->second;
    pending.add(d, -c);
    auto replacement = step(d);
    if (replacement) pending.add(*replacement, c);
    else done.add(d, c);
  }
  return done;
}

// D(v over w) = D(w over v) + <v,w> C for the labels at r (w) and r + 1 (v).
DiagramElement swap_labels_exact(const Diagram& d, int r) {
  const RawDiagram raw = to_raw(d);
  DiagramElement out;
  out.add(swap_legs(raw, r), 1);
  out.add(contract_legs(raw, r), pairing(d.labels[r + 1], d.labels[r]));
  return out;
}

std::optional<DiagramElement> beta_step(const Diagram& d) {
  if (!simple(d)) throw InvalidArgument("beta_normalize needs chord diagrams");
  if (has_same_strand_chord(d)) return DiagramElement{};
  if (is_ordered(d)) return std::nullopt;
  // Greedy linear extension of the strand orders, preferring the current label order.
  const auto legs = leg_slots(d);
  const int L = static_cast<int>(legs.size());
  std::vector<std::vector<int>> succ(L);
  std::vector<int> indeg(L, 0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b && legs[a].strand == legs[b].strand && legs[a].pos < legs[b].pos) {
        succ[a].push_back(b);
        ++indeg[b];
      }
  std::vector<int> rank(L, -1);
  for (int next = 0; next < L; ++next) {
    int pick = -1;
    for (int a = 0; a < L; ++a)
      if (rank[a] < 0 && indeg[a] == 0) {
        pick = a;
        break;
      }
    rank[pick] = next;
    indeg[pick] = -1;
    for (int b : succ[pick]) --indeg[b];
  }
  for (int r = L - 2; r >= 0; --r)
    if (rank[r] > rank[r + 1]) return swap_labels_exact(d, r);
  throw InternalError("unordered diagram without an inverted label pair");
}

}  // namespace

DiagramElement phi_normalize(const DiagramElement& e) {
  return rewrite(e, [](const Diagram& d) -> std::optional<DiagramElement> {
    for (int r = static_cast<int>(d.labels.size()) - 2; r >= 0; --r)
      if (d.labels[r] == Label::Y && d.labels[r + 1] == Label::X) return swap_labels_exact(d, r);
    return std::nullopt;
  });
}

DiagramElement gamma_normalize(const DiagramElement& e) {
  return rewrite(e, [](const Diagram& d) -> std::optional<DiagramElement> {
    if (simple(d)) return std::nullopt;
    const int base = d.fixed_ports();
    for (int s = 0; s < d.strands; ++s)
      for (int pos = d.slot_counts[s] - 1; pos >= 0; --pos) {
        const int q = d.mate[d.slot_port(s, pos)];
        if (q < base) continue;
        auto [plus, minus] = expand_vertex(to_raw(d), (q - base) / 3, (q - base) % 3);
        DiagramElement out;
        out.add(plus, 1);
        out.add(minus, -1);
        return out;
      }
    throw InvalidArgument("trivalent component not attached to a strand");
  });
}

DiagramElement beta_normalize(const DiagramElement& e) { return rewrite(e, beta_step); }

DiagramElement alpha_normalize(const DiagramElement& e) {
  for (const auto& [d, c] : e.terms())
    if (d.strands != 3) throw InvalidArgument("alpha_normalize is defined for three strands");
  return rewrite(e, [](const Diagram& d) -> std::optional<DiagramElement> {
    if (!simple(d)) throw InvalidArgument("alpha_normalize needs chord diagrams");
    if (has_same_strand_chord(d)) return DiagramElement{};
    if (!is_ordered(d)) return beta_step(d);
    if (is_fully_ordered(d)) return std::nullopt;
    const auto legs = leg_slots(d);
    const int first_strand = d.slot_counts[0];
    // Highest strand-1 labeled edge with a strand-2 label just below it (case A)
    // or a 1-2 chord just below it on strand 1 (case B).
    for (int r = static_cast<int>(legs.size()) - 1; r >= 0; --r) {
      if (legs[r].strand != 0) continue;
      if (r > 0 && legs[r - 1].strand == 1) return swap_labels_exact(d, r - 1);
      const int pos = legs[r].pos;
      if (pos == 0) continue;
      const int below = d.mate[d.slot_port(0, pos - 1)];
      if (below < first_strand || below >= d.slot_total()) continue;
      // D = U + S with U the swapped diagram and S the tripod, expanded at strand 2.
      const RawDiagram raw = to_raw(d);
      DiagramElement out;
      out.add(swap_slots(raw, 0, pos - 1), 1);
      const RawDiagram tripod = merge_slots(raw, 0, pos - 1);
      auto [plus, minus] = expand_vertex(tripod, static_cast<int>(tripod.tri.size()) - 1, 2);
      out.add(plus, 1);
      out.add(minus, -1);
      return out;
    }
    throw InternalError("diagram is neither fully ordered nor reducible");
  });
}

DiagramElement chain_diagram(int i) {
  if (i < 0) throw InvalidArgument("negative chain length");
  RawDiagram raw;
  raw.strands = 2;
  raw.slots.resize(2);
  const int slot = raw.new_port();
  raw.slots[0].push_back(slot);
  const int x_leg = raw.new_port();
  raw.legs.push_back({Label::X, x_leg});
  int toward_root = slot;
  for (int k = 0; k < i; ++k) {
    const int root = raw.new_port(), inner = raw.new_port(), y = raw.new_port();
    const int y_leg = raw.new_port();
    raw.tri.push_back({root, inner, y});
    raw.connect(root, toward_root);
    raw.connect(y, y_leg);
    raw.legs.push_back({Label::Y, y_leg});
    toward_root = inner;
  }
  raw.connect(toward_root, x_leg);
  DiagramElement out;
  out.add(raw, 1);
  return out;
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::kCommuting: return "commuting";
    case RelationKind::kMixed: return "mixed";
    case RelationKind::kDiagonal: return "diagonal";
    case RelationKind::kCentral: return "central";
  }
  return "?";
}

namespace {

RelationKind classify_relation(const FreePoly& r, int strands) {
  const int first_t = 2 * strands;
  bool has_t = false, t_in_bracket = false, diagonal = false;
  for (const auto& [w, c] : r) {
    for (auto l : w) has_t = has_t || l >= first_t;
    if (w.size() == 2 && (w[0] >= first_t || w[1] >= first_t)) t_in_bracket = true;
    if (w.size() == 2 && w[0] < first_t && w[1] < first_t && w[0] % strands == w[1] % strands && w[0] != w[1])
      diagonal = true;
  }
  if (t_in_bracket) return RelationKind::kCentral;
  if (diagonal) return RelationKind::kDiagonal;
  return has_t ? RelationKind::kMixed : RelationKind::kCommuting;
}

int poly_degree(const FreePoly& r, const std::vector<Generator>& gens) {
  return word_degree(r.begin()->first, gens);
}

std::vector<std::string> names_of(const Word& w, const std::vector<Generator>& gens) {
  std::vector<std::string> out;
  for (auto l : w) out.push_back(gens[l].name);
  return out;
}

// Calls f(element) for every w1 * r * w2 of total degree `degree`.
void for_each_ideal_element(const FreePoly& r, int strands, int degree,
                            const std::function<void(const DiagramElement&)>& f) {
  AlgebraPtr alg = t1n(strands, degree);
  AlgebraPtr words = free_lift(*alg, degree);
  const auto& gens = alg->generators();
  const int rest = degree - poly_degree(r, gens);
  for (int k1 = 0; k1 <= rest; ++k1)
    for (int i1 = 0; i1 < words->word_count(k1); ++i1)
      for (int i2 = 0; i2 < words->word_count(rest - k1); ++i2) {
        const auto left = names_of(words->word(k1, i1), gens);
        const auto right = names_of(words->word(rest - k1, i2), gens);
        DiagramElement e;
        for (const auto& [w, c] : r) {
          auto letters = left;
          for (auto& name : names_of(w, gens)) letters.push_back(name);
          letters.insert(letters.end(), right.begin(), right.end());
          e.add(word_diagram(letters, strands), c);
        }
        f(e);
      }
}

}  // namespace

std::vector<RelationImageRow> umap_relation_images(int strands, int max_degree) {
  if (strands < 1 || strands > 3) throw InvalidArgument("relation images cover 1 to 3 strands");
  const auto& relations = t1n(strands, 2)->presentation().relations;
  std::map<std::pair<RelationKind, int>, RelationImageRow> rows;
  for (int d = 1; d <= max_degree; ++d) {
    auto full = slice({DiagramClass::kFull, strands, d});
    for (const auto& r : relations) {
      if (poly_degree(r, t1n(strands, 2)->generators()) > d) continue;
      const RelationKind kind = classify_relation(r, strands);
      auto& row = rows[{kind, d}];
      row.kind = kind;
      row.degree = d;
      for_each_ideal_element(r, strands, d, [&](const DiagramElement& e) {
        ++row.elements;
        if (!full->is_zero(e)) ++row.nonzero;
      });
    }
  }
  std::vector<RelationImageRow> out;
  for (auto& [key, row] : rows) out.push_back(row);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.degree, a.kind) < std::tie(b.degree, b.kind);
  });
  return out;
}

MultiplicativityResult umap_multiplicativity(int strands, int degree, int pairs, std::uint64_t seed) {
  if (degree < 2) throw InvalidArgument("products need degree at least 2");
  AlgebraPtr alg = t1n(strands, degree);
  auto full = slice({DiagramClass::kFull, strands, degree});
  Echelon diagonal(full->dimension());
  for (const auto& r : alg->presentation().relations)
    if (classify_relation(r, strands) == RelationKind::kDiagonal && poly_degree(r, alg->generators()) <= degree)
      for_each_ideal_element(r, strands, degree,
                             [&](const DiagramElement& e) { diagonal.insert(full->coordinates(e)); });

  std::mt19937_64 rng(seed);
  auto random_element = [&](int d) {
    const auto basis = alg->basis(d);
    AlgebraElement a(alg, degree);
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < terms; ++k) {
      const long c = static_cast<long>(rng() % 7) - 3;
      if (c != 0) a.add_word(d, basis[rng() % basis.size()], c);
    }
    return a;
  };
  MultiplicativityResult out;
  for (int p = 0; p < pairs; ++p) {
    const int da = 1 + static_cast<int>(rng() % (degree - 1));
    const AlgebraElement a = random_element(da), b = random_element(degree - da);
    SparseVec diff = full->coordinates(u_map(multiply(a, b, degree), strands) -
                                       compose(u_map(a, strands), u_map(b, strands)));
    ++out.pairs;
    if (diff.empty()) continue;
    ++out.failures;
    diagonal.reduce(diff);
    if (!diff.empty()) ++out.failures_mod_diagonal;
  }
  return out;
}

std::vector<IsomorphismRow> isomorphism_report(int strands, int max_degree) {
  if (strands < 2 || strands > 3) throw InvalidArgument("the rank check covers 2 or 3 strands");
  if (max_degree < 1 || max_degree > 5) throw InvalidArgument("max degree must lie in [1, 5]");
  std::vector<std::string> letters;
  for (int i = 1; i < strands; ++i) {
    letters.push_back("x" + std::to_string(i));
    letters.push_back("y" + std::to_string(i));
  }
  const int g = static_cast<int>(letters.size());
  std::vector<IsomorphismRow> rows;
  for (int d = 1; d <= max_degree; ++d) {
    AlgebraPtr alg = t1n(strands, d);
    auto sl = slice({DiagramClass::kSRmodH, strands, d});
    const int wc = alg->word_count(d);
    Echelon ew(wc), ed(sl->dimension()), ej(wc + sl->dimension());
    std::vector<int> digits(d, 0);
    int words = 0;
    while (true) {
      std::vector<std::string> word;
      Word w;
      for (int k : digits) {
        word.push_back(letters[k]);
        w.push_back(static_cast<std::uint8_t>(alg->generator_index(letters[k])));
      }
      AlgebraElement a(alg, d);
      a.add_word(w, 1);
      DiagramElement img;
      img.add(word_diagram(word, strands), 1);
      const SparseVec cw = a.slice(d);
      const SparseVec cd = sl->coordinates(mod_h(img));
      SparseVec joint = cw;
      for (const auto& [c, v] : cd) joint.emplace(wc + c, v);
      ew.insert(cw);
      ed.insert(cd);
      ej.insert(std::move(joint));
      ++words;
      int k = d - 1;
      while (k >= 0 && ++digits[k] == g) digits[k--] = 0;
      if (k < 0) break;
    }
    IsomorphismRow row;
    row.degree = d;
    row.words = words;
    row.rank_algebra = ew.rank();
    row.rank_diagrams = ed.rank();
    row.rank_joint = ej.rank();
    row.target_dim = sl->dimension();
    row.well_defined = row.rank_joint == row.rank_algebra;
    row.injective = row.well_defined && row.rank_diagrams == row.rank_algebra;
    row.surjective = row.rank_diagrams == row.target_dim;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ellassoc
