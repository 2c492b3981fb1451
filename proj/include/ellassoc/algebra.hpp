#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ellassoc/echelon.hpp"
#include "ellassoc/rational.hpp"
#include "ellassoc/words.hpp"

namespace ellassoc {

// Generators with positive degrees and homogeneous relations (associative
// expansions of Lie relations).
struct Presentation {
  std::vector<Generator> generators;
  std::vector<FreePoly> relations;
};

// Sign of the mixed relation [x_i, y_j] = s * t_ij (i != j) in the algebra t_{1,n}.
enum class MixedSign {
  // s = +1; with [x_i, y_i] = -sum_j t_ij this makes [x_i + x_j, t_ij] = 0.
  kPlus,
  // s = <x,y> = -1, the intersection form taken literally.
  kIntersectionForm,
};

// U(g) / (degree > N) for a graded Lie algebra g given by a presentation.
// Each degree slice is the span of all words modulo an exactly echelonized
// ideal slice; pivots are lexicographically largest words, so standard
// (basis) words are the smallest ones.
class TruncatedAlgebra {
 public:
  TruncatedAlgebra(std::string name, Presentation presentation, int truncation);

  const std::string& name() const { return name_; }
  int truncation() const { return truncation_; }
  const std::vector<Generator>& generators() const { return presentation_.generators; }
  const Presentation& presentation() const { return presentation_; }
  bool is_free() const { return presentation_.relations.empty(); }

  // -1 if unknown. Accepts "t21" for "t12".
  int generator_index(std::string_view name) const;

  int word_count(int degree) const { return static_cast<int>(words_[degree].size()); }
  const Word& word(int degree, int index) const { return words_[degree][index]; }
  // -1 if the word has a different degree or uses unknown letters.
  int word_index(const Word& w) const;
  int word_index(int degree, std::uint64_t code) const;
  std::uint64_t word_code(int degree, int index) const { return codes_[degree][index]; }

  int dimension(int degree) const { return word_count(degree) - ideal_[degree].rank(); }
  std::vector<int> basis(int degree) const { return ideal_[degree].free_columns(); }
  bool is_standard(int degree, int index) const { return !ideal_[degree].is_pivot(index); }
  const Echelon& ideal(int degree) const { return ideal_[degree]; }

  void reduce(int degree, SparseVec& v) const;

  static std::uint64_t concat(std::uint64_t u, std::uint64_t v);

 private:
  std::string name_;
  Presentation presentation_;
  int truncation_;
  std::vector<std::vector<Word>> words_;
  std::vector<std::vector<std::uint64_t>> codes_;
  std::vector<std::unordered_map<std::uint64_t, int>> index_;
  std::vector<Echelon> ideal_;
};

using AlgebraPtr = std::shared_ptr<const TruncatedAlgebra>;

AlgebraPtr build_free_assoc(const std::vector<Generator>& generators, int truncation);
AlgebraPtr build_t1n(int n, int truncation, MixedSign sign = MixedSign::kPlus);
AlgebraPtr build_dk(int n, int truncation);

// Shared instances keyed by (kind, n, truncation); safe to call concurrently.
AlgebraPtr free_ab(int truncation);
AlgebraPtr t1n(int n, int truncation);
AlgebraPtr dk(int n, int truncation);
// The free algebra on the generators of `algebra` (same names and degrees), cached.
AlgebraPtr free_lift(const TruncatedAlgebra& algebra, int truncation);
// Parses "t1n(3)", "dk(4)" or "free(A,B,...)" (all letters of degree 1).
AlgebraPtr algebra_by_name(std::string_view name, int truncation);

// A truncated element of a TruncatedAlgebra; every slice is kept reduced.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, int truncation);

  static AlgebraElement scalar(AlgebraPtr algebra, int truncation, const Rational& c);
  static AlgebraElement generator(AlgebraPtr algebra, int truncation, std::string_view name);
  static AlgebraElement from_poly(AlgebraPtr algebra, int truncation, const FreePoly& p);

  const TruncatedAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  int truncation() const { return truncation_; }

  const SparseVec& slice(int degree) const { return parts_[degree]; }
  // Adds c * (word of the given degree and index), then reduces that slice.
  void add_word(int degree, int index, const Rational& c);
  void add_word(const Word& w, const Rational& c);
  void add_slice(int degree, const SparseVec& v, const Rational& c = 1);

  Rational constant() const;
  // Smallest degree with a nonzero part; truncation + 1 if zero.
  int valuation() const;
  bool is_zero() const;
  std::vector<int> nonzero_counts() const;
  AlgebraElement truncated(int truncation) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Rational& c);
  bool operator==(const AlgebraElement& o) const;

 private:
  void check_compatible(const AlgebraElement& o) const;

  AlgebraPtr algebra_;
  int truncation_;
  std::vector<SparseVec> parts_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a);
AlgebraElement operator*(AlgebraElement a, const Rational& c);
AlgebraElement operator*(const Rational& c, AlgebraElement a);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, int truncation);
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);
// Requires a zero constant term.
AlgebraElement exp(const AlgebraElement& a);
// Require constant term 1.
AlgebraElement log(const AlgebraElement& g);
AlgebraElement inverse(const AlgebraElement& g);

// The algebra morphism from a free algebra sending generator i to images[i],
// truncated at `truncation`. Images must have positive valuation and the
// source must be known through every degree that can reach `truncation`.
AlgebraElement substitute(const AlgebraElement& series, const std::vector<AlgebraElement>& images,
                          int truncation);

// True when every standard word in the support uses only the given letters.
bool uses_only(const AlgebraElement& a, const std::vector<int>& letters);

}  // namespace ellassoc
