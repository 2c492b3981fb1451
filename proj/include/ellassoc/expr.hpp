#pragma once

#include <string>
#include <string_view>

#include "ellassoc/algebra.hpp"

namespace ellassoc {

// Grammar (whitespace-insensitive):
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary | '/' integer)*
//   unary   := '-' unary | primary
//   primary := integer | name | '(' sum ')' | '[' sum ',' sum ']'
//            | 'exp' '(' sum ')' | 'log' '(' sum ')' | 'inverse' '(' sum ')'
// Unary minus binds tighter than '*'. Generator names resolve in `algebra`.
// Throws ParseError with the byte offset of the offending token.
AlgebraElement parse_element(std::string_view text, AlgebraPtr algebra, int truncation);

// Canonical form: terms by degree then basis order, e.g. "x1 - 1/2*y1*x1 + 3*t12".
// parse_element(format_element(a)) == a for every element a.
std::string format_element(const AlgebraElement& a);

}  // namespace ellassoc
