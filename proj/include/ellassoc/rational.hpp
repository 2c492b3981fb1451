#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace ellassoc {

using Rational = mpq_class;

// Sparse vector keyed by column index; zero entries are never stored.
using SparseVec = std::map<int, Rational>;

// Canonical p/q. Prefer this to Rational(p, q), which GMP does not canonicalize.
Rational make_rational(long num, long den = 1);

// Always "p/q" with q > 0, e.g. "1/1", "-1/24".
std::string to_string(const Rational& q);

// Accepts "p/q" or "p" with an optional sign. Throws InvalidArgument.
Rational parse_rational(std::string_view text);

Rational factorial(int n);
Rational binomial(int n, int k);

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);

}  // namespace ellassoc
