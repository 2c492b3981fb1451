#include "ellassoc/associator.hpp"

#include <algorithm>

#include "ellassoc/errors.hpp"

namespace ellassoc {

const std::vector<Generator>& ab_alphabet() {
  static const std::vector<Generator> alphabet{{"A", 1}, {"B", 1}};
  return alphabet;
}

namespace {

AlgebraElement lie_to_free(const LieSeries& s) {
  return AlgebraElement::from_poly(free_ab(s.truncation()), s.truncation(), s.to_poly());
}

}  // namespace

AssociatorSeries::AssociatorSeries(LieSeries log_phi)
    : log_phi_(std::move(log_phi)), group_like_(free_ab(log_phi_.truncation()), log_phi_.truncation()) {
  if (log_phi_.alphabet() != ab_alphabet()) throw InvalidArgument("associators live over {A, B}");
  if (log_phi_.valuation() < 2) throw InvalidArgument("log phi must start in degree 2");
  group_like_ = exp(lie_to_free(log_phi_));
}

AlgebraElement evaluate(const AlgebraElement& phi, const AlgebraElement& a, const AlgebraElement& b,
                        int truncation) {
  return substitute(phi, {a, b}, truncation);
}

AlgebraElement pentagon_residual(const AlgebraElement& phi, int truncation) {
  const int N = truncation;
  AlgebraPtr alg = dk(4, N);
  auto t = [&](const char* name) { return AlgebraElement::generator(alg, N, name); };
  const auto t12 = t("t12"), t13 = t("t13"), t14 = t("t14"), t23 = t("t23"), t24 = t("t24"),
             t34 = t("t34");
  auto f = [&](const AlgebraElement& a, const AlgebraElement& b) { return evaluate(phi, a, b, N); };
  const AlgebraElement lhs = f(t12, t23 + t24) * f(t13 + t23, t34);
  const AlgebraElement rhs = f(t23, t34) * f(t12 + t13, t24 + t34) * f(t12, t23);
  return lhs - rhs;
}

AlgebraElement hexagon_residual(const AlgebraElement& phi, int sign, int truncation) {
  if (sign != 1 && sign != -1) throw InvalidArgument("hexagon sign must be +1 or -1");
  const int N = truncation;
  AlgebraPtr alg = dk(3, N);
  const auto t12 = AlgebraElement::generator(alg, N, "t12");
  const auto t13 = AlgebraElement::generator(alg, N, "t13");
  const auto t23 = AlgebraElement::generator(alg, N, "t23");
  const Rational half(sign, 2);
  auto f = [&](const AlgebraElement& a, const AlgebraElement& b) { return evaluate(phi, a, b, N); };
  const AlgebraElement lhs = exp((t13 + t23) * half);
  const AlgebraElement rhs =
      f(t13, t12) * exp(t13 * half) * inverse(f(t13, t23)) * exp(t23 * half) * f(t12, t23);
  return lhs - rhs;
}

namespace {

// Degree-d slices of all three residuals, stacked into one coordinate vector.
SparseVec stacked_residual(const LieSeries& log_phi, int d) {
  const AlgebraElement phi = exp(lie_to_free(log_phi.truncated(d)));
  SparseVec out;
  int offset = 0;
  const AlgebraElement parts[] = {pentagon_residual(phi, d), hexagon_residual(phi, 1, d),
                                  hexagon_residual(phi, -1, d)};
  for (const auto& r : parts) {
    for (const auto& [col, val] : r.slice(d)) out.emplace(offset + col, val);
    offset += r.algebra().word_count(d);
  }
  return out;
}

void require_zero_at(const LieSeries& log_phi, int d) {
  if (!stacked_residual(log_phi, d).empty())
    throw InternalError("associator equations are inconsistent in degree " + std::to_string(d));
}

}  // namespace

AssociatorSeries solve_associator(const SolverConfig& config) {
  const int N = config.max_degree;
  if (N < 2 || N > 8) throw InvalidArgument("max degree must lie in [2, 8]");
  LieSeries log_phi(ab_alphabet(), N);
  require_zero_at(log_phi, 1);
  for (int d = 2; d <= N; ++d) {
    if (config.even && d % 2 == 1) {
      require_zero_at(log_phi, d);
      continue;
    }
    const std::vector<Word> basis = lyndon_basis(ab_alphabet(), d);
    const int m = static_cast<int>(basis.size());
    const SparseVec r0 = stacked_residual(log_phi, d);
    // The degree-d residual is affine in the degree-d part of log phi.
    std::vector<SparseVec> effect(m);
    for (int k = 0; k < m; ++k) {
      LieSeries trial = log_phi;
      trial.add_term(basis[k], 1);
      effect[k] = stacked_residual(trial, d);
      axpy(effect[k], -1, r0);
    }
    // Column 0 holds the constant; unknown k sits in column 1 + position in gauge order.
    auto column = [&](int k) {
      return 1 + (config.gauge == Gauge::kLyndonAscending ? k : m - 1 - k);
    };
    std::map<int, SparseVec> equations;
    for (const auto& [row, val] : r0) equations[row][0] = val;
    for (int k = 0; k < m; ++k)
      for (const auto& [row, val] : effect[k]) equations[row][column(k)] = val;
    Echelon e(m + 1);
    for (auto& [row, eq] : equations) {
      SparseVec v;
      for (const auto& [c, val] : eq)
        if (val != 0) v.emplace(c, val);
      e.insert(std::move(v));
    }
    if (e.is_pivot(0))
      throw InternalError("associator equations are inconsistent in degree " + std::to_string(d));
    e.interreduce();
    for (int k = 0; k < m; ++k) {
      const int c = column(k);
      if (!e.is_pivot(c)) continue;
      const SparseVec& row = e.pivot_row(c);
      auto it = row.find(0);
      if (it != row.end()) log_phi.add_term(basis[k], -it->second);
    }
    require_zero_at(log_phi, d);
  }
  return AssociatorSeries(log_phi);
}

}  // namespace ellassoc
