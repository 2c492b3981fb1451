#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ellassoc/algebra.hpp"
#include "ellassoc/diagrams.hpp"
#include "ellassoc/echelon.hpp"

namespace ellassoc {

// full: STU, AS, IHX, STU-like.  R: no vertices on the rightmost strand.
// SR: R without trivalent vertices; STU-like and 4T.  SRmodH: SR modulo
// same-strand chords.  OSR: ordered SR diagrams.  FOSR (n = 3): fully ordered.
enum class DiagramClass { kFull, kR, kSR, kSRmodH, kOSR, kFOSR };

std::string to_string(DiagramClass c);
DiagramClass parse_diagram_class(std::string_view name);

struct SpaceSpec {
  DiagramClass cls = DiagramClass::kFull;
  int strands = 1;
  int degree = 0;
};

// On each strand, labeled edges appear bottom to top in increasing label order.
bool is_ordered(const Diagram& d);
// n = 3: labels of strand-1 edges below labels of strand-2 edges, and strand-1
// labeled edges below the strand-1 ends of all 1-2 chords.
bool is_fully_ordered(const Diagram& d);
bool in_h(const Diagram& d);
bool in_class(const Diagram& d, DiagramClass cls);

std::vector<Diagram> enumerate(const SpaceSpec& spec);
std::vector<DiagramElement> relation_elements(const SpaceSpec& spec);

// Exact quotient of the span of a class slice by its relations.
class SpaceSlice {
 public:
  explicit SpaceSlice(const SpaceSpec& spec);

  const SpaceSpec& spec() const { return spec_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Diagram>& basis() const { return basis_; }
  // Number of diagrams spanning the slice before relations.
  int span_size() const { return static_cast<int>(columns_.size()); }

  // Coordinates over basis(). Throws InvalidArgument for terms outside the class.
  SparseVec coordinates(const DiagramElement& e) const;
  bool is_zero(const DiagramElement& e) const { return coordinates(e).empty(); }

 private:
  SpaceSpec spec_;
  std::vector<Diagram> columns_;
  std::map<Diagram, int> column_of_;
  Echelon echelon_;
  std::vector<Diagram> basis_;
  std::map<int, int> basis_index_;
};

// Shared, immutable slices; built once per spec.
std::shared_ptr<const SpaceSlice> slice(const SpaceSpec& spec);

// Diagram of a word in generators named x<i>, y<i>, t<ij>: each letter adds on
// top (strand slots and label order), later letters higher.
RawDiagram word_diagram(const std::vector<std::string>& letters, int strands);
DiagramElement u_map(const AlgebraElement& a, int strands);

// Drops diagrams with same-strand chords. Throws InvalidArgument on trivalent input.
DiagramElement mod_h(const DiagramElement& e);

// Moves every x label below every y label (full class, exact).
DiagramElement phi_normalize(const DiagramElement& e);
// Removes trivalent vertices by STU at the leftmost strand (R class, exact).
DiagramElement gamma_normalize(const DiagramElement& e);
// Reorders labels to match strand order, dropping same-strand chords (SR class).
DiagramElement beta_normalize(const DiagramElement& e);
// n = 3: rewrites into fully ordered diagrams modulo same-strand chords.
DiagramElement alpha_normalize(const DiagramElement& e);

// Chain diagram on strand 1 of two strands: a slot, i trivalent vertices each
// carrying a y leg, ending in an x leg. Vertices are oriented (toward strand,
// toward the x end, y leg); so u(ad(y1)^i (x1)) equals its STU expansion.
DiagramElement chain_diagram(int i);

// Defining relations of t_{1,n}, grouped by shape.
enum class RelationKind {
  kCommuting,  // [x_i, x_j], [y_i, y_j]
  kMixed,      // [x_i, y_j] - t_ij, i != j
  kDiagonal,   // [x_i, y_i] + sum_j t_ij
  kCentral,    // [x_i, t_jk], [y_i, t_jk] with i, j, k distinct
};
std::string to_string(RelationKind k);

struct RelationImageRow {
  RelationKind kind;
  int degree = 0;
  int elements = 0;  // ideal elements w1 * r * w2 tested
  int nonzero = 0;   // of those, images that are nonzero in the full slice
};

// Images under u of the two-sided ideal elements w1 * r * w2 (words w1, w2)
// of each degree up to max_degree, tested in slice(full, strands, degree).
std::vector<RelationImageRow> umap_relation_images(int strands, int max_degree);

struct MultiplicativityResult {
  int pairs = 0;
  int failures = 0;
  // Failures that survive after also quotienting by u of the diagonal ideal.
  int failures_mod_diagonal = 0;
};

// Compares u(a * b) with compose(u(a), u(b)) for random reduced a, b in
// U(t_{1,n}) with deg a + deg b = degree, in slice(full, strands, degree).
MultiplicativityResult umap_multiplicativity(int strands, int degree, int pairs, std::uint64_t seed);

struct IsomorphismRow {
  int degree = 0;
  int words = 0;
  int rank_algebra = 0;   // dim of the restricted subalgebra slice
  int rank_diagrams = 0;  // rank of the word images in SR modulo H
  int rank_joint = 0;
  int target_dim = 0;     // dim of SR modulo H
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
};

// For words in x_i, y_i (i < n), compares their classes in U(t_{1,n}) with
// their diagram images in SR modulo H, degree by degree.
std::vector<IsomorphismRow> isomorphism_report(int strands, int max_degree);

}  // namespace ellassoc
