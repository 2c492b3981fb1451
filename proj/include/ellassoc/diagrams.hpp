#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellassoc/rational.hpp"

namespace ellassoc {

enum class Label : std::uint8_t { X = 0, Y = 1 };

// Intersection pairing: <y,x> = 1, <x,y> = -1, <x,x> = <y,y> = 0.
int pairing(Label v, Label w);
char label_char(Label l);

// A Jacobi diagram over n upward strands in canonical form.
//
// Every univalent or trivalent end is a port; `mate` pairs ports into edges.
// Ports are laid out as: strand slots (strand by strand, bottom to top), then
// labeled legs (lowest label first), then three ports per trivalent vertex in
// cyclic order. Two diagrams are equal iff their canonical forms are equal.
struct Diagram {
  int strands = 0;
  std::vector<int> slot_counts;
  std::vector<Label> labels;
  int trivalent = 0;
  std::vector<int> mate;

  int slot_total() const;
  int degree() const { return slot_total() + trivalent; }
  int fixed_ports() const { return slot_total() + static_cast<int>(labels.size()); }
  int slot_port(int strand, int pos) const;
  int leg_port(int order) const { return slot_total() + order; }
  int tri_port(int vertex, int corner) const { return fixed_ports() + 3 * vertex + corner; }

  auto operator<=>(const Diagram&) const = default;
};

struct Leg {
  Label label;
  int port;
};

// Editable diagram with arbitrary port ids; canonicalize() turns it into a Diagram.
struct RawDiagram {
  int strands = 0;
  std::vector<std::vector<int>> slots;
  std::vector<Leg> legs;
  std::vector<std::array<int, 3>> tri;
  std::vector<int> mate;

  int new_port();
  void connect(int p, int q);
};

RawDiagram to_raw(const Diagram& d);

struct SignedDiagram {
  Diagram diagram;
  int sign;
};

// Canonical form and the orientation sign relating it to the input. Empty when
// the diagram vanishes by antisymmetry (an orientation-reversing automorphism).
// Throws InvalidArgument if a trivalent vertex is not connected to any fixed end.
std::optional<SignedDiagram> canonicalize(const RawDiagram& raw);

// Every connected component reaches a strand.
bool pattern_connected(const Diagram& d);
// Some edge joins two slots on the same strand.
bool has_same_strand_chord(const Diagram& d);

// Finite linear combination of canonical diagrams; zero coefficients are never stored.
class DiagramElement {
 public:
  using Terms = std::map<Diagram, Rational>;

  DiagramElement() = default;
  static DiagramElement of(const Diagram& d, const Rational& c = 1);

  void add(const Diagram& d, const Rational& c);
  void add(const RawDiagram& d, const Rational& c);
  void add(const DiagramElement& e, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool operator==(const DiagramElement&) const = default;

 private:
  Terms terms_;
};

DiagramElement operator+(DiagramElement a, const DiagramElement& b);
DiagramElement operator-(DiagramElement a, const DiagramElement& b);
DiagramElement operator*(const Rational& c, const DiagramElement& a);

// Stacks b above a; all labels of b become greater than those of a.
RawDiagram stack(const RawDiagram& a, const RawDiagram& b);
DiagramElement compose(const DiagramElement& a, const DiagramElement& b);

// ---- local moves; each returns a new raw diagram -----------------------------

RawDiagram swap_legs(const RawDiagram& d, int order);
RawDiagram swap_slots(const RawDiagram& d, int strand, int pos);
// Joins legs `order` and `order + 1` into one edge.
RawDiagram contract_legs(const RawDiagram& d, int order);
// Replaces slots pos (lower) and pos+1 (upper) by one slot attached to a new
// vertex oriented (toward strand, upper partner, lower partner); then
// T - U = S where T is the input and U has the two slots swapped.
RawDiagram merge_slots(const RawDiagram& d, int strand, int pos);
// STU expansion of vertex v at a corner whose partner is a slot:
// S = D(P above Q) - D(Q above P), with P, Q the partners of the next two corners.
std::pair<RawDiagram, RawDiagram> expand_vertex(const RawDiagram& d, int vertex, int corner);

// Locates the slot holding a port: {strand, pos}, or {-1, -1}.
std::pair<int, int> find_slot(const RawDiagram& d, int port);

// ---- enumeration --------------------------------------------------------------

struct EnumerationFilter {
  int strands = 1;
  int degree = 0;
  bool rightmost_strand_empty = false;
  int max_trivalent = -1;  // -1 means unbounded
};

// All canonical pattern-connected strut-free diagrams with the given shape
// constraints, sorted.
std::vector<Diagram> enumerate_diagrams(const EnumerationFilter& filter);

}  // namespace ellassoc
