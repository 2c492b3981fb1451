#include "ellassoc/diagrams.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

#include "ellassoc/errors.hpp"

namespace ellassoc {

int pairing(Label v, Label w) {
  if (v == w) return 0;
  return v == Label::Y ? 1 : -1;
}

char label_char(Label l) { return l == Label::X ? 'x' : 'y'; }

int Diagram::slot_total() const { return std::accumulate(slot_counts.begin(), slot_counts.end(), 0); }

int Diagram::slot_port(int strand, int pos) const {
  int offset = 0;
  for (int s = 0; s < strand; ++s) offset += slot_counts[s];
  return offset + pos;
}

int RawDiagram::new_port() {
  mate.push_back(-1);
  return static_cast<int>(mate.size()) - 1;
}

void RawDiagram::connect(int p, int q) {
  mate[p] = q;
  mate[q] = p;
}

RawDiagram to_raw(const Diagram& d) {
  RawDiagram r;
  r.strands = d.strands;
  r.mate = d.mate;
  int port = 0;
  r.slots.resize(d.strands);
  for (int s = 0; s < d.strands; ++s)
    for (int i = 0; i < d.slot_counts[s]; ++i) r.slots[s].push_back(port++);
  for (Label l : d.labels) r.legs.push_back({l, port++});
  for (int v = 0; v < d.trivalent; ++v) {
    r.tri.push_back({port, port + 1, port + 2});
    port += 3;
  }
  return r;
}

std::optional<SignedDiagram> canonicalize(const RawDiagram& raw) {
  std::vector<int> fixed;
  for (const auto& strand : raw.slots) fixed.insert(fixed.end(), strand.begin(), strand.end());
  for (const auto& leg : raw.legs) fixed.push_back(leg.port);
  const int f = static_cast<int>(fixed.size());
  const int k = static_cast<int>(raw.tri.size());

  // port -> fixed index, or -(1 + 3 * vertex + corner) for trivalent corners
  std::vector<int> where(raw.mate.size(), std::numeric_limits<int>::min());
  for (int i = 0; i < f; ++i) where[fixed[i]] = i;
  for (int v = 0; v < k; ++v)
    for (int c = 0; c < 3; ++c) where[raw.tri[v][c]] = -(1 + 3 * v + c);
  auto mate_of = [&](int port) {
    const int q = raw.mate[port];
    if (q < 0 || where[q] == std::numeric_limits<int>::min() || raw.mate[q] != port)
      throw InvalidArgument("diagram has a dangling or asymmetric edge");
    return q;
  };

  std::vector<int> best;
  int best_sign = 0;
  bool vanishes = false;
  std::vector<int> id(k), entry(k), local1(k), local2(k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::fill(id.begin(), id.end(), -1);
    int discovered = 0;
    std::function<void(int)> visit = [&](int port) {
      const int w = where[mate_of(port)];
      if (w >= 0) return;
      const int v = (-w - 1) / 3;
      const int corner = (-w - 1) % 3;
      if (id[v] >= 0) return;
      id[v] = discovered++;
      const bool reflect = (mask >> id[v]) & 1u;
      entry[v] = corner;
      local1[v] = (corner + (reflect ? 2 : 1)) % 3;
      local2[v] = (corner + (reflect ? 1 : 2)) % 3;
      visit(raw.tri[v][local1[v]]);
      visit(raw.tri[v][local2[v]]);
    };
    for (int p : fixed) visit(p);
    if (discovered < k) throw InvalidArgument("trivalent vertex not connected to a strand or leg");

    auto code = [&](int port) {
      const int w = where[port];
      if (w >= 0) return w;
      const int v = (-w - 1) / 3;
      const int corner = (-w - 1) % 3;
      const int local = corner == entry[v] ? 0 : corner == local1[v] ? 1 : 2;
      return f + 3 * id[v] + local;
    };
    std::vector<int> enc(f + 3 * k);
    for (int i = 0; i < f; ++i) enc[i] = code(mate_of(fixed[i]));
    for (int v = 0; v < k; ++v) {
      const int base = f + 3 * id[v];
      enc[base] = code(mate_of(raw.tri[v][entry[v]]));
      enc[base + 1] = code(mate_of(raw.tri[v][local1[v]]));
      enc[base + 2] = code(mate_of(raw.tri[v][local2[v]]));
    }
    const int sign = std::popcount(mask) % 2 ? -1 : 1;
    if (best.empty() || enc < best) {
      best = std::move(enc);
      best_sign = sign;
      vanishes = false;
    } else if (enc == best && sign != best_sign) {
      vanishes = true;
    }
  }
  if (vanishes) return std::nullopt;

  Diagram d;
  d.strands = raw.strands;
  for (const auto& strand : raw.slots) d.slot_counts.push_back(static_cast<int>(strand.size()));
  for (const auto& leg : raw.legs) d.labels.push_back(leg.label);
  d.trivalent = k;
  d.mate = std::move(best);
  return SignedDiagram{std::move(d), best_sign};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool pattern_connected(const Diagram& d) {
  const int n = static_cast<int>(d.mate.size());
  UnionFind uf(n);
  for (int p = 0; p < n; ++p) uf.unite(p, d.mate[p]);
  for (int v = 0; v < d.trivalent; ++v) {
    uf.unite(d.tri_port(v, 0), d.tri_port(v, 1));
    uf.unite(d.tri_port(v, 0), d.tri_port(v, 2));
  }
  std::vector<bool> has_slot(n, false);
  for (int p = 0; p < d.slot_total(); ++p) has_slot[uf.find(p)] = true;
  for (int p = d.slot_total(); p < n; ++p)
    if (!has_slot[uf.find(p)]) return false;
  return true;
}

bool has_same_strand_chord(const Diagram& d) {
  int p = 0;
  for (int s = 0; s < d.strands; ++s) {
    const int begin = p;
    const int end = p + d.slot_counts[s];
    for (; p < end; ++p)
      if (d.mate[p] >= begin && d.mate[p] < end) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

DiagramElement DiagramElement::of(const Diagram& d, const Rational& c) {
  DiagramElement e;
  e.add(d, c);
  return e;
}

void DiagramElement::add(const Diagram& d, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(d, 0);
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void DiagramElement::add(const RawDiagram& d, const Rational& c) {
  if (c == 0) return;
  auto s = canonicalize(d);
  if (s) add(s->diagram, s->sign == 1 ? c : Rational(-c));
}

void DiagramElement::add(const DiagramElement& e, const Rational& c) {
  for (const auto& [d, v] : e.terms_) add(d, c * v);
}

DiagramElement operator+(DiagramElement a, const DiagramElement& b) {
  a.add(b, 1);
  return a;
}

DiagramElement operator-(DiagramElement a, const DiagramElement& b) {
  a.add(b, -1);
  return a;
}

DiagramElement operator*(const Rational& c, const DiagramElement& a) {
  DiagramElement out;
  out.add(a, c);
  return out;
}

RawDiagram stack(const RawDiagram& a, const RawDiagram& b) {
  if (a.strands != b.strands) throw InvalidArgument("stacking diagrams on different strand counts");
  RawDiagram out = a;
  const int offset = static_cast<int>(a.mate.size());
  for (int q : b.mate) out.mate.push_back(q < 0 ? q : q + offset);
  for (int s = 0; s < b.strands; ++s)
    for (int p : b.slots[s]) out.slots[s].push_back(p + offset);
  for (const auto& leg : b.legs) out.legs.push_back({leg.label, leg.port + offset});
  for (const auto& t : b.tri) out.tri.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  return out;
}

DiagramElement compose(const DiagramElement& a, const DiagramElement& b) {
  DiagramElement out;
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) {
      if (da.strands != db.strands) throw InvalidArgument("composing diagrams on different strand counts");
      out.add(stack(to_raw(da), to_raw(db)), ca * cb);
    }
  return out;
}

RawDiagram swap_legs(const RawDiagram& d, int order) {
  RawDiagram out = d;
  std::swap(out.legs.at(order), out.legs.at(order + 1));
  return out;
}

RawDiagram swap_slots(const RawDiagram& d, int strand, int pos) {
  RawDiagram out = d;
  auto& s = out.slots.at(strand);
  std::swap(s.at(pos), s.at(pos + 1));
  return out;
}

RawDiagram contract_legs(const RawDiagram& d, int order) {
  RawDiagram out = d;
  const int a = out.legs.at(order).port;
  const int b = out.legs.at(order + 1).port;
  if (out.mate[a] == b) throw InvalidArgument("contracting the two ends of a strut");
  out.connect(out.mate[a], out.mate[b]);
  out.mate[a] = out.mate[b] = -1;
  out.legs.erase(out.legs.begin() + order, out.legs.begin() + order + 2);
  return out;
}

RawDiagram merge_slots(const RawDiagram& d, int strand, int pos) {
  RawDiagram out = d;
  auto& s = out.slots.at(strand);
  const int lower = s.at(pos);
  const int upper = s.at(pos + 1);
  const int lower_partner = out.mate[lower];
  const int upper_partner = out.mate[upper];
  const int q = out.new_port();
  const int c0 = out.new_port(), c1 = out.new_port(), c2 = out.new_port();
  out.connect(c0, q);
  if (upper_partner == lower) {
    out.connect(c1, c2);
  } else {
    out.connect(c1, upper_partner);
    out.connect(c2, lower_partner);
  }
  out.mate[lower] = out.mate[upper] = -1;
  s.erase(s.begin() + pos, s.begin() + pos + 2);
  s.insert(s.begin() + pos, q);
  out.tri.push_back({c0, c1, c2});
  return out;
}

std::pair<int, int> find_slot(const RawDiagram& d, int port) {
  for (int s = 0; s < d.strands; ++s)
    for (std::size_t i = 0; i < d.slots[s].size(); ++i)
      if (d.slots[s][i] == port) return {s, static_cast<int>(i)};
  return {-1, -1};
}

std::pair<RawDiagram, RawDiagram> expand_vertex(const RawDiagram& d, int vertex, int corner) {
  const auto t = d.tri.at(vertex);
  const int root = t[corner];
  const int p1 = t[(corner + 1) % 3];
  const int p2 = t[(corner + 2) % 3];
  const auto [strand, pos] = find_slot(d, d.mate[root]);
  if (strand < 0) throw InvalidArgument("expansion corner is not attached to a strand");
  const bool loop = d.mate[p1] == p2;

  auto build = [&](bool p_on_top) {
    RawDiagram out = d;
    const int P = out.mate[p1];
    const int Q = out.mate[p2];
    const int sp = out.mate[root];
    const int upper = out.new_port();
    const int lower = out.new_port();
    if (loop) {
      out.connect(upper, lower);
    } else {
      out.connect(upper, p_on_top ? P : Q);
      out.connect(lower, p_on_top ? Q : P);
    }
    for (int p : {root, p1, p2, sp}) out.mate[p] = -1;
    auto& s = out.slots[strand];
    s.erase(s.begin() + pos);
    s.insert(s.begin() + pos, {lower, upper});
    out.tri.erase(out.tri.begin() + vertex);
    return out;
  };
  return {build(true), build(false)};
}

// ---------------------------------------------------------------------------

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    compositions(total - i, parts, cur, out);
    cur.pop_back();
  }
}

// Generates matchings of slots, legs and k trivalent vertices in which every
// vertex is reached, in static port order, before any of its ports is the
// lowest unmatched one. Each diagram arises at least once.
void generate_structures(const std::vector<int>& slot_counts, int legs, int k,
                         std::set<Diagram>& out) {
  const int strands = static_cast<int>(slot_counts.size());
  const int slots = std::accumulate(slot_counts.begin(), slot_counts.end(), 0);
  const int f = slots + legs;
  const int total = f + 3 * k;
  std::vector<int> mate(total, -1);
  int used = 0;

  auto is_leg = [&](int p) { return p >= slots && p < f; };
  auto vertex_of = [&](int p) { return p >= f ? (p - f) / 3 : -1; };

  std::function<void()> rec = [&]() {
    int p = 0;
    while (p < total && mate[p] >= 0) ++p;
    if (p == total) {
      if (used != k) return;
      RawDiagram raw;
      raw.strands = strands;
      raw.mate = mate;
      raw.slots.resize(strands);
      int port = 0;
      for (int s = 0; s < strands; ++s)
        for (int i = 0; i < slot_counts[s]; ++i) raw.slots[s].push_back(port++);
      for (int i = 0; i < legs; ++i) raw.legs.push_back({Label::X, port++});
      for (int v = 0; v < k; ++v) raw.tri.push_back({f + 3 * v, f + 3 * v + 1, f + 3 * v + 2});
      auto c = canonicalize(raw);
      if (c && pattern_connected(c->diagram)) out.insert(std::move(c->diagram));
      return;
    }
    if (vertex_of(p) >= used) return;
    const int limit = f + 3 * used;
    for (int q = p + 1; q < limit; ++q) {
      if (mate[q] >= 0) continue;
      if (is_leg(p) && is_leg(q)) continue;
      if (vertex_of(p) >= 0 && vertex_of(p) == vertex_of(q)) continue;
      mate[p] = q;
      mate[q] = p;
      rec();
      mate[p] = mate[q] = -1;
    }
    if (used < k) {
      const int q = f + 3 * used;
      ++used;
      mate[p] = q;
      mate[q] = p;
      rec();
      mate[p] = mate[q] = -1;
      --used;
    }
  };
  rec();
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(const EnumerationFilter& filter) {
  const int n = filter.strands;
  const int d = filter.degree;
  if (n < 1) throw InvalidArgument("need at least one strand");
  if (d < 0) throw InvalidArgument("negative degree");
  std::set<Diagram> result;
  const int max_k = filter.max_trivalent < 0 ? d : std::min(d, filter.max_trivalent);
  for (int k = 0; k <= max_k; ++k) {
    const int s = d - k;
    if (s == 0 && d > 0) continue;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(s, n, cur, comps);
    for (const auto& comp : comps) {
      if (filter.rightmost_strand_empty && comp.back() != 0) continue;
      for (int legs = 0; legs <= d; ++legs) {
        if ((s + legs + 3 * k) % 2) continue;
        std::set<Diagram> shapes;
        generate_structures(comp, legs, k, shapes);
        for (const Diagram& shape : shapes)
          for (std::uint32_t m = 0; m < (1u << legs); ++m) {
            Diagram labeled = shape;
            for (int i = 0; i < legs; ++i) labeled.labels[i] = (m >> i) & 1u ? Label::Y : Label::X;
            result.insert(std::move(labeled));
          }
      }
    }
  }
  return {result.begin(), result.end()};
}

}  // namespace ellassoc
