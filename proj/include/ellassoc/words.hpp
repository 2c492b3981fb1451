#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ellassoc/rational.hpp"

namespace ellassoc {

struct Generator {
  std::string name;
  int degree = 1;
  bool operator==(const Generator&) const = default;
};

// Letters are generator indices. std::vector's ordering is the lexicographic
// order used throughout (a proper prefix is smaller).
using Word = std::vector<std::uint8_t>;

// Non-commutative polynomial in the letters of some alphabet.
using FreePoly = std::map<Word, Rational>;

int word_degree(const Word& w, const std::vector<Generator>& alphabet);

void add_to(FreePoly& p, const Rational& a, const FreePoly& q);
FreePoly scaled(const FreePoly& p, const Rational& a);

// Product keeping only words of degree <= max_degree.
FreePoly multiply(const FreePoly& p, const FreePoly& q, const std::vector<Generator>& alphabet,
                  int max_degree);
FreePoly commutator(const FreePoly& p, const FreePoly& q, const std::vector<Generator>& alphabet,
                    int max_degree);

FreePoly letter(int index);

}  // namespace ellassoc
