#include <doctest.h>

#include "ellassoc/echelon.hpp"
#include "ellassoc/errors.hpp"
#include "ellassoc/rational.hpp"

using namespace ellassoc;

TEST_CASE("rationals print as p/q and parse back") {
  CHECK(to_string(make_rational(-2, 4)) == "-1/2");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-6/8") == make_rational(-3, 4));
  CHECK(parse_rational("+1/24") == make_rational(1, 24));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(13, 0) == 1);
  CHECK(binomial(13, 6) == 1716);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("echelon rank and reduction on a hand-checked matrix") {
  // Rows (1,2,3), (2,4,6), (0,1,1): rank 2; (1,3,4) is their sum, (0,0,1) is not in the span.
  Echelon e(3);
  CHECK(e.insert({{0, 1}, {1, 2}, {2, 3}}));
  CHECK_FALSE(e.insert({{0, 2}, {1, 4}, {2, 6}}));
  CHECK(e.insert({{1, 1}, {2, 1}}));
  CHECK(e.rank() == 2);
  SparseVec in_span{{0, 1}, {1, 3}, {2, 4}};
  e.reduce(in_span);
  CHECK(in_span.empty());
  SparseVec outside{{2, 1}};
  e.reduce(outside);
  CHECK_FALSE(outside.empty());
  for (const auto& [c, v] : outside) CHECK_FALSE(e.is_pivot(c));
}

TEST_CASE("pivots are the largest columns and interreduction keeps the row space") {
  Echelon e(4);
  e.insert({{0, 1}, {3, 1}});
  e.insert({{1, 1}, {2, 2}, {3, 1}});
  CHECK(e.pivot_columns() == std::vector<int>{2, 3});
  CHECK(e.free_columns() == std::vector<int>{0, 1});
  e.interreduce();
  for (int p : e.pivot_columns())
    for (int q : e.pivot_columns())
      if (p != q) CHECK(e.pivot_row(p).count(q) == 0);
  SparseVec v{{0, 1}, {3, 1}};
  e.reduce(v);
  CHECK(v.empty());
}
