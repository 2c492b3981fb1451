#include "ellassoc/elliptic.hpp"

#include "ellassoc/errors.hpp"

namespace ellassoc {

LieSeries t_of(int truncation) {
  const auto a = LieSeries::generator(ab_alphabet(), truncation, 0);
  const auto b = LieSeries::generator(ab_alphabet(), truncation, 1);
  return bracket(b, a);
}

LieSeries a_tilde(int truncation) {
  std::vector<Rational> coeffs;
  for (int i = 0; i < truncation; ++i) coeffs.push_back(bernoulli(i) / factorial(i));
  return ad_series(LieSeries::generator(ab_alphabet(), truncation, 1),
                   LieSeries::generator(ab_alphabet(), truncation, 0), coeffs);
}

EllipticPair build_e_phi(const AssociatorSeries& phi, int truncation) {
  const int N = truncation;
  if (phi.truncation() < N) throw InvalidArgument("associator is truncated below the requested degree");
  AlgebraPtr alg = free_ab(N);
  auto to_free = [&](const LieSeries& s) { return AlgebraElement::from_poly(alg, N, s.to_poly()); };
  const AlgebraElement at = to_free(a_tilde(N));
  const AlgebraElement t = to_free(t_of(N));
  const AlgebraElement b = AlgebraElement::generator(alg, N, "B");
  const AlgebraElement& g = phi.group_like();
  const AlgebraElement phi_at = evaluate(g, at, t, N);
  const AlgebraElement phi_at_inv = inverse(phi_at);
  EllipticPair out{phi_at * exp(at) * phi_at_inv,
                   exp(t * Rational(1, 2)) * evaluate(g, -at - t, t, N) * exp(b) * phi_at_inv};
  return out;
}

AlgebraElement elliptic_residual(const EllipticPair& pair, const AssociatorSeries& phi, int identity,
                                 int truncation, MixedSign sign) {
  const int N = truncation;
  if (identity < 1 || identity > kEllipticIdentities) throw InvalidArgument("identity must be 1..4");
  if (pair.x.truncation() < N || phi.truncation() < N)
    throw InvalidArgument("inputs are truncated below the requested degree");
  const AlgebraElement& g = phi.group_like();
  const Rational half(1, 2);

  if (identity == 1) {
    AlgebraPtr alg = sign == MixedSign::kPlus ? t1n(2, N) : build_t1n(2, N, sign);
    auto gen = [&](const char* name) { return AlgebraElement::generator(alg, N, name); };
    const auto x1 = gen("x1"), y1 = gen("y1");
    const AlgebraElement X = substitute(pair.x, {x1, y1}, N);
    const AlgebraElement Y = substitute(pair.y, {x1, y1}, N);
    return Y * X * inverse(Y) * inverse(X) - exp(gen("t12"));
  }

  AlgebraPtr alg = sign == MixedSign::kPlus ? t1n(3, N) : build_t1n(3, N, sign);
  auto gen = [&](const char* name) { return AlgebraElement::generator(alg, N, name); };
  const auto x1 = gen("x1"), y1 = gen("y1"), x2 = gen("x2"), y2 = gen("y2");
  const auto t12 = gen("t12"), t13 = gen("t13"), t23 = gen("t23");
  const AlgebraElement p123 = evaluate(g, t12, t23, N);
  const AlgebraElement p132 = evaluate(g, t12, t13, N);
  const AlgebraElement p123_inv = inverse(p123);
  const AlgebraElement p132_inv = inverse(p132);
  const AlgebraElement e_plus = exp(t12 * half);
  const AlgebraElement e_minus = exp(t12 * -half);
  auto first = [&](const AlgebraElement& f) { return p123_inv * substitute(f, {x1, y1}, N) * p123; };
  auto second = [&](const AlgebraElement& f) { return p132_inv * substitute(f, {x2, y2}, N) * p132; };

  switch (identity) {
    case 2:
      return substitute(pair.x, {x1 + x2, y1 + y2}, N) - first(pair.x) * e_plus * second(pair.x) * e_plus;
    case 3:
      return substitute(pair.y, {x1 + x2, y1 + y2}, N) - first(pair.y) * e_minus * second(pair.y) * e_minus;
    default: {
      const AlgebraElement y_first = first(pair.y);
      const AlgebraElement x_second = second(pair.x);
      return y_first * e_plus * x_second * e_plus - e_plus * x_second * e_minus * y_first;
    }
  }
}

}  // namespace ellassoc
