#pragma once

#include <string>
#include <vector>

#include "ellassoc/algebra.hpp"
#include "ellassoc/lie.hpp"

namespace ellassoc {

const std::vector<Generator>& ab_alphabet();

// A group-like series phi = exp(log_phi) in the completed free algebra on {A, B}.
class AssociatorSeries {
 public:
  explicit AssociatorSeries(LieSeries log_phi);

  const LieSeries& log_phi() const { return log_phi_; }
  int truncation() const { return log_phi_.truncation(); }
  // exp(log_phi) in free(A,B), truncated at truncation().
  const AlgebraElement& group_like() const { return group_like_; }

 private:
  LieSeries log_phi_;
  AlgebraElement group_like_;
};

// Which unknowns stay free (and are pinned to 0) when a degree is underdetermined:
// the later columns in the chosen order become pivots first.
enum class Gauge { kLyndonAscending, kLyndonDescending };

struct SolverConfig {
  int max_degree = 4;
  bool even = true;
  Gauge gauge = Gauge::kLyndonAscending;
};

// phi(a, b) for images a, b of A, B.
AlgebraElement evaluate(const AlgebraElement& phi, const AlgebraElement& a, const AlgebraElement& b,
                        int truncation);

// Residual of the pentagon in U(t_4), truncated at `truncation`.
AlgebraElement pentagon_residual(const AlgebraElement& phi, int truncation);
// Residual of the hexagon with crossing exp(sign * t / 2) in U(t_3).
AlgebraElement hexagon_residual(const AlgebraElement& phi, int sign, int truncation);

// Degree-by-degree solution of the pentagon and both hexagons with log phi
// starting in degree 2. Throws InternalError if some degree is inconsistent.
AssociatorSeries solve_associator(const SolverConfig& config);

}  // namespace ellassoc
