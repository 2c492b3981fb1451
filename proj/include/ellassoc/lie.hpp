#pragma once

#include <map>
#include <string>
#include <vector>

#include "ellassoc/rational.hpp"
#include "ellassoc/words.hpp"

namespace ellassoc {

bool is_lyndon(const Word& w);

// Lyndon words of the given degree, in lexicographic order.
std::vector<Word> lyndon_basis(const std::vector<Generator>& alphabet, int degree);

// Standard factorization w = uv with v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

// Associative expansion of the standard bracketing of a Lyndon word. Its
// smallest word is w itself with coefficient 1.
const FreePoly& lyndon_expansion(const Word& w, const std::vector<Generator>& alphabet);

// Element of the free Lie algebra on `alphabet`, truncated at degree N,
// in Lyndon coordinates.
class LieSeries {
 public:
  LieSeries(std::vector<Generator> alphabet, int truncation);

  static LieSeries generator(std::vector<Generator> alphabet, int truncation, int index);
  // Extracts Lyndon coordinates. Throws InvalidArgument if `p` is not a Lie element.
  static LieSeries from_poly(std::vector<Generator> alphabet, int truncation, const FreePoly& p);

  const std::vector<Generator>& alphabet() const { return alphabet_; }
  int truncation() const { return truncation_; }
  // Lyndon word -> coefficient, for a single degree.
  const std::map<Word, Rational>& part(int degree) const { return parts_[degree]; }
  void add_term(const Word& lyndon, const Rational& c);
  Rational coefficient(const Word& lyndon) const;

  FreePoly to_poly() const;
  bool is_zero() const;
  int valuation() const;
  LieSeries truncated(int truncation) const;

  LieSeries& operator+=(const LieSeries& o);
  LieSeries& operator-=(const LieSeries& o);
  LieSeries& operator*=(const Rational& c);
  bool operator==(const LieSeries& o) const;

 private:
  std::vector<Generator> alphabet_;
  int truncation_;
  std::vector<std::map<Word, Rational>> parts_;
};

LieSeries operator+(LieSeries a, const LieSeries& b);
LieSeries operator-(LieSeries a, const LieSeries& b);
LieSeries operator*(const Rational& c, LieSeries a);

LieSeries bracket(const LieSeries& a, const LieSeries& b);

// sum_i coeffs[i] * (ad b)^i (a)
LieSeries ad_series(const LieSeries& b, const LieSeries& a, const std::vector<Rational>& coeffs);

// log(exp(a) exp(b)) by the Dynkin bracket formula.
LieSeries bch(const LieSeries& a, const LieSeries& b);

// Bernoulli numbers with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0.
Rational bernoulli(int n);

}  // namespace ellassoc
