#include <doctest.h>

#include "ellassoc/associator.hpp"
#include "ellassoc/errors.hpp"
#include "ellassoc/json_io.hpp"

using namespace ellassoc;

namespace {

const Word kAB{0, 1};

LieSeries with_ab(int N, const Rational& c) {
  LieSeries s(ab_alphabet(), N);
  s.add_term(kAB, c);
  return s;
}

}  // namespace

TEST_CASE("degree-2 hexagon forces the coefficient 1/24") {
  // The degree-2 hexagon is affine in c, so it has exactly one root; the
  // pentagon holds for every c in degree 2.
  const int N = 2;
  for (const auto& [c, zero] : std::vector<std::pair<Rational, bool>>{
           {make_rational(1, 24), true}, {0, false}, {make_rational(-1, 24), false}, {make_rational(1, 12), false}}) {
    const AssociatorSeries phi(with_ab(N, c));
    const bool ok = hexagon_residual(phi.group_like(), 1, N).is_zero() &&
                    hexagon_residual(phi.group_like(), -1, N).is_zero();
    CHECK(ok == zero);
    CHECK(pentagon_residual(phi.group_like(), N).is_zero());
  }
}

TEST_CASE("phi = 1 fails the hexagon from degree 2 but not the pentagon") {
  const AssociatorSeries one(LieSeries(ab_alphabet(), 3));
  const auto counts = hexagon_residual(one.group_like(), 1, 3).nonzero_counts();
  CHECK(counts[0] == 0);
  CHECK(counts[1] == 0);
  CHECK(counts[2] > 0);
  CHECK(pentagon_residual(one.group_like(), 3).is_zero());
}

TEST_CASE("solver output satisfies every equation through degree 4") {
  const AssociatorSeries phi = solve_associator({4, true, Gauge::kLyndonAscending});
  CHECK(phi.log_phi().coefficient(kAB) == make_rational(1, 24));
  CHECK(phi.log_phi().part(3).empty());
  CHECK(pentagon_residual(phi.group_like(), 4).is_zero());
  CHECK(hexagon_residual(phi.group_like(), 1, 4).is_zero());
  CHECK(hexagon_residual(phi.group_like(), -1, 4).is_zero());
}

TEST_CASE("both gauges give valid associators") {
  for (Gauge g : {Gauge::kLyndonAscending, Gauge::kLyndonDescending}) {
    const AssociatorSeries phi = solve_associator({4, true, g});
    CHECK(pentagon_residual(phi.group_like(), 4).is_zero());
    CHECK(hexagon_residual(phi.group_like(), 1, 4).is_zero());
    CHECK(hexagon_residual(phi.group_like(), -1, 4).is_zero());
  }
}

TEST_CASE("without evenness the odd degree stays consistent") {
  const AssociatorSeries phi = solve_associator({3, false, Gauge::kLyndonAscending});
  CHECK(hexagon_residual(phi.group_like(), 1, 3).is_zero());
  CHECK(pentagon_residual(phi.group_like(), 3).is_zero());
}

TEST_CASE("negating the degree-2 coefficient breaks the hexagon at degree 2") {
  const AssociatorSeries phi = solve_associator({2, true, Gauge::kLyndonAscending});
  LieSeries flipped = phi.log_phi();
  flipped.add_term(kAB, -2 * flipped.coefficient(kAB));
  const AssociatorSeries bad(flipped);
  CHECK(hexagon_residual(bad.group_like(), 1, 2).nonzero_counts()[2] > 0);
}

TEST_CASE("solver rejects a degree bound below 2") {
  CHECK_THROWS_AS(solve_associator({1, true, Gauge::kLyndonAscending}), InvalidArgument);
}

TEST_CASE("associator JSON round trip and load errors") {
  const AssociatorSeries phi = solve_associator({4, true, Gauge::kLyndonAscending});
  const AssociatorSeries back = associator_from_json(associator_to_json(phi));
  CHECK(back.log_phi() == phi.log_phi());
  CHECK(back.group_like() == phi.group_like());

  Json j = associator_to_json(phi);
  j["terms"].push_back({{"degree", 1}, {"bracket", "A"}, {"coeff", "1/1"}});
  try {
    associator_from_json(j);
    FAIL("degree-1 term accepted");
  } catch (const LoadError& e) {
    CHECK(e.where() == "/terms/" + std::to_string(j["terms"].size() - 1) + "/degree");
  }

  Json bad_coeff = associator_to_json(phi);
  bad_coeff["terms"][0]["coeff"] = "one";
  try {
    associator_from_json(bad_coeff);
    FAIL("bad coefficient accepted");
  } catch (const LoadError& e) {
    CHECK(e.where() == "/terms/0/coeff");
  }

  Json other = associator_to_json(phi);
  other["alphabet"][1]["name"] = "C";
  CHECK_THROWS_AS(associator_from_json(other), LoadError);

  Json empty = associator_to_json(phi);
  empty["terms"] = Json::array();
  std::vector<std::string> warnings;
  const AssociatorSeries one = associator_from_json(empty, &warnings);
  CHECK(one.log_phi().is_zero());
  CHECK(warnings.size() == 1);
}
