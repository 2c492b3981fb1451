#include <doctest.h>

#include <random>

#include "ellassoc/errors.hpp"
#include "ellassoc/expr.hpp"
#include "ellassoc/json_io.hpp"
#include "ellassoc/report.hpp"

using namespace ellassoc;

namespace {

AlgebraElement gen(const AlgebraPtr& a, int N, const char* name) { return AlgebraElement::generator(a, N, name); }

AlgebraElement random_element(const AlgebraPtr& alg, int N, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  AlgebraElement a(alg, N);
  for (int d = 0; d <= N; ++d)
    for (int i = 0; i < alg->word_count(d); ++i)
      if (rng() % 3 == 0) a.add_word(d, i, make_rational(coeff(rng), 1 + static_cast<long>(rng() % 4)));
  return a;
}

}  // namespace

TEST_CASE("parser precedence") {
  const int N = 3;
  auto alg = free_ab(N);
  const auto A = gen(alg, N, "A"), B = gen(alg, N, "B");
  CHECK(parse_element("A + B*A", alg, N) == A + B * A);
  CHECK(parse_element("-A*B", alg, N) == (-A) * B);
  CHECK(parse_element("2*A - B/3", alg, N) == 2 * A - make_rational(1, 3) * B);
  CHECK(parse_element("[A, [A, B]]", alg, N) == commutator(A, commutator(A, B)));
  CHECK(parse_element("(A + B)*(A - B)", alg, N) == (A + B) * (A - B));
  CHECK(parse_element("exp(A)*exp(-A)", alg, N) == AlgebraElement::scalar(alg, N, 1));
  CHECK(parse_element("log(exp(A + B))", alg, N) == A + B);
  CHECK(parse_element("inverse(1 + A)", alg, N) == inverse(AlgebraElement::scalar(alg, N, 1) + A));
}

TEST_CASE("parser reduces in the target algebra") {
  const int N = 3;
  auto alg = t1n(2, N);
  CHECK(parse_element("[x1, y2] - t12", alg, N).is_zero());
  CHECK(parse_element("[y1, x1] - t12", alg, N).is_zero());
  CHECK(parse_element("[x1, x2]", alg, N).is_zero());
  CHECK(parse_element("t21", alg, N) == parse_element("t12", alg, N));
}

TEST_CASE("parse errors carry byte offsets") {
  auto alg = free_ab(3);
  auto offset_of = [&](const char* text) -> long {
    try {
      parse_element(text, alg, 3);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("A + C") == 4);
  CHECK(offset_of("A +") == 3);
  CHECK(offset_of("(A") == 2);
  CHECK(offset_of("[A B]") == 3);
  CHECK(offset_of("A / B") == 4);
  CHECK(offset_of("A $") == 2);
}

TEST_CASE("format then parse is the identity") {
  std::mt19937_64 rng(11);
  for (const char* name : {"free(A,B)", "t1n(2)", "t1n(3)", "dk(3)"}) {
    const int N = 3;
    auto alg = algebra_by_name(name, N);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(alg, N, rng);
      CAPTURE(format_element(a));
      CHECK(parse_element(format_element(a), alg, N) == a);
    }
  }
  CHECK(format_element(AlgebraElement(free_ab(2), 2)) == "0");
}

TEST_CASE("element JSON round trip and errors") {
  std::mt19937_64 rng(5);
  auto alg = t1n(3, 3);
  const auto a = random_element(alg, 3, rng);
  CHECK(element_from_json(element_to_json(a)) == a);

  Json j = element_to_json(gen(alg, 3, "x1"));
  j["terms"][0]["word"] = {"x1", "q9"};
  try {
    element_from_json(j);
    FAIL("unknown letter accepted");
  } catch (const LoadError& e) {
    CHECK(e.where() == "/terms/0/word/1");
  }
}

TEST_CASE("Lie JSON accepts any bracketing") {
  const Json j = {{"alphabet", {{{"name", "A"}, {"degree", 1}}, {{"name", "B"}, {"degree", 1}}}},
                  {"truncation", 3},
                  {"terms", {{{"degree", 3}, {"bracket", {"B", {"A", "B"}}}, {"coeff", "2"}}}}};
  const LieSeries s = lie_from_json(j);
  // [B,[A,B]] = -[[A,B],B]
  CHECK(s.coefficient({0, 1, 1}) == -2);
  CHECK(lie_from_json(lie_to_json(s)) == s);
}

TEST_CASE("report configuration validation") {
  CHECK_THROWS_AS(parse_report_config(Json::object()), InvalidArgument);
  CHECK_THROWS_AS(parse_report_config({{"phi", {{"source", "solve"}}}, {"bogus", 1}}), InvalidArgument);
  CHECK_THROWS_AS(parse_report_config({{"phi", {{"source", "elsewhere"}}}}), InvalidArgument);
  CHECK_THROWS_AS(parse_report_config({{"phi", {{"source", "solve"}, {"max_degree", 3}}}}), InvalidArgument);
  const ReportConfig c = parse_report_config({{"phi", {{"source", "solve"}, {"max_degree", 3}}},
                                                      {"max_degree", {{"associator", 3}, {"elliptic", 3}}},
                                                      {"checks", {"lie"}}});
  CHECK(c.phi.max_degree == 3);
  CHECK(c.suites == std::set<std::string>{"lie"});
}

TEST_CASE("a small report is deterministic and passes") {
  const ReportConfig c = parse_report_config(
      {{"phi", {{"source", "solve"}, {"max_degree", 3}}},
       {"max_degree", {{"associator", 3}, {"elliptic", 3}, {"diagrams", 2}, {"diagrams_n3", 2}, {"lie", 4}}},
       {"checks", {"associator", "elliptic", "lie", "chain"}}});
  const Json r1 = run_report(c), r2 = run_report(c);
  CHECK(r1.dump(2) == r2.dump(2));
  CHECK(report_passed(r1));
  CHECK(failing_checks(r1).empty());
  CHECK_FALSE(r1.contains("wall_ms"));
}

TEST_CASE("a trivial associator fails the hexagon in the report") {
  const ReportConfig c = parse_report_config({{"phi", {{"source", "trivial"}, {"max_degree", 3}}},
                                              {"max_degree", {{"associator", 3}, {"elliptic", 3}}},
                                              {"checks", {"associator"}}});
  const Json r = run_report(c);
  CHECK_FALSE(report_passed(r));
  const auto failing = failing_checks(r);
  REQUIRE(failing.size() == 2);
  CHECK(failing[0].rfind("associator.hexagon_minus", 0) == 0);
  CHECK(failing[1].rfind("associator.hexagon_plus", 0) == 0);
}
