#include <doctest.h>

#include "ellassoc/errors.hpp"
#include "ellassoc/lie.hpp"
#include "ellassoc/spaces.hpp"

using namespace ellassoc;

namespace {

DiagramElement degree_part(const DiagramElement& e, int degree) {
  DiagramElement out;
  for (const auto& [d, c] : e.terms())
    if (d.degree() == degree) out.add(d, c);
  return out;
}

AlgebraElement word_element(int strands, int N, const std::string& name) {
  return AlgebraElement::generator(free_lift(*t1n(strands, N), N), N, name);
}

}  // namespace

TEST_CASE("class names round trip") {
  for (auto c : {DiagramClass::kFull, DiagramClass::kR, DiagramClass::kSR, DiagramClass::kSRmodH, DiagramClass::kOSR,
                 DiagramClass::kFOSR})
    CHECK(parse_diagram_class(to_string(c)) == c);
  CHECK_THROWS_AS(parse_diagram_class("nope"), InvalidArgument);
}

TEST_CASE("two-strand SR modulo H has the dimensions of the free algebra on x1, y1") {
  // The subalgebra of U(t_{1,2}) generated by x1 and y1 is free, so its
  // degree-d slice has dimension 2^d.
  for (int d = 1; d <= 4; ++d) {
    CAPTURE(d);
    CHECK(slice({DiagramClass::kSRmodH, 2, d})->dimension() == (1 << d));
  }
}

TEST_CASE("every listed relation is zero in its slice") {
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 3; ++d)
      for (auto cls : {DiagramClass::kFull, DiagramClass::kR, DiagramClass::kSR}) {
        if (n == 1 && cls != DiagramClass::kFull) continue;  // restricted classes need two strands
        const auto sl = slice({cls, n, d});
        for (const auto& r : relation_elements({cls, n, d})) CHECK(sl->is_zero(r));
      }
}

TEST_CASE("u is multiplicative on free words") {
  const int N = 3;
  const auto x1 = word_element(2, N, "x1"), y1 = word_element(2, N, "y1"), t12 = word_element(2, N, "t12");
  CHECK(compose(u_map(x1, 2), u_map(y1, 2)) == u_map(x1 * y1, 2));
  CHECK(compose(u_map(t12, 2), u_map(x1, 2)) == u_map(t12 * x1, 2));
  CHECK(u_map(x1 * y1, 2).size() == 1);
}

TEST_CASE("relation images: all shapes but the diagonal vanish") {
  for (int n = 2; n <= 3; ++n)
    for (const auto& row : umap_relation_images(n, 3)) {
      CAPTURE(n);
      CAPTURE(to_string(row.kind));
      CAPTURE(row.degree);
      if (row.kind == RelationKind::kDiagonal) {
        CHECK(row.elements > 0);
        CHECK(row.nonzero == row.elements);
      } else {
        CHECK(row.nonzero == 0);
      }
    }
}

TEST_CASE("products agree with composition modulo the diagonal ideal") {
  const auto m = umap_multiplicativity(2, 3, 20, 7);
  CHECK(m.pairs == 20);
  CHECK(m.failures_mod_diagonal == 0);
}

TEST_CASE("normalizers stay in the class, are idempotent and preserve coordinates") {
  for (int n = 2; n <= 3; ++n)
    for (int d = 1; d <= 3; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      const auto full = slice({DiagramClass::kFull, n, d});
      for (const auto& D : enumerate({DiagramClass::kFull, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto p = phi_normalize(e);
        CHECK(full->is_zero(p - e));
        CHECK(phi_normalize(p) == p);
      }
      const auto R = slice({DiagramClass::kR, n, d});
      for (const auto& D : enumerate({DiagramClass::kR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto g = gamma_normalize(e);
        for (const auto& [x, c] : g.terms()) CHECK(x.trivalent == 0);
        CHECK(R->is_zero(g - e));
        CHECK(gamma_normalize(g) == g);
      }
      const auto H = slice({DiagramClass::kSRmodH, n, d});
      for (const auto& D : enumerate({DiagramClass::kSR, n, d})) {
        const auto e = DiagramElement::of(D);
        const auto b = beta_normalize(e);
        for (const auto& [x, c] : b.terms()) CHECK(is_ordered(x));
        CHECK(H->is_zero(mod_h(b) - mod_h(e)));
        CHECK(beta_normalize(b) == b);
      }
      if (n == 3)
        for (const auto& D : enumerate({DiagramClass::kOSR, n, d})) {
          const auto e = DiagramElement::of(D);
          const auto a = alpha_normalize(e);
          for (const auto& [x, c] : a.terms()) CHECK(is_fully_ordered(x));
          CHECK(H->is_zero(mod_h(a) - mod_h(e)));
          CHECK(alpha_normalize(a) == a);
        }
    }
}

TEST_CASE("phi normalization moves x labels below y labels") {
  const int N = 2;
  const auto y1 = word_element(2, N, "y1"), x1 = word_element(2, N, "x1");
  const auto p = phi_normalize(u_map(y1 * x1, 2));
  for (const auto& [d, c] : p.terms())
    for (std::size_t i = 1; i < d.labels.size(); ++i) CHECK(d.labels[i - 1] <= d.labels[i]);
}

TEST_CASE("mod_h drops same-strand chords and rejects trivalent input") {
  const int N = 2;
  const auto x1 = word_element(2, N, "x1");
  const auto t12 = word_element(2, N, "t12");
  CHECK(mod_h(u_map(t12, 2)) == u_map(t12, 2));
  CHECK(mod_h(u_map(x1 * x1, 2)) == u_map(x1 * x1, 2));
  CHECK_THROWS_AS(mod_h(chain_diagram(1)), InvalidArgument);
}

TEST_CASE("chain diagrams expand to iterated brackets") {
  for (int i = 0; i <= 3; ++i) {
    CAPTURE(i);
    const int N = i + 1;
    const auto alg = t1n(2, N);
    auto ad = AlgebraElement::generator(alg, N, "x1");
    const auto y = AlgebraElement::generator(alg, N, "y1");
    for (int j = 0; j < i; ++j) ad = commutator(y, ad);
    const auto H = slice({DiagramClass::kSRmodH, 2, N});
    CHECK(H->is_zero(mod_h(u_map(ad, 2)) - mod_h(gamma_normalize(chain_diagram(i)))));
  }
}

TEST_CASE("the Bernoulli-weighted chain sum matches the image of x1~") {
  const int N = 4;
  const auto alg = t1n(2, N);
  const auto x = AlgebraElement::generator(alg, N, "x1"), y = AlgebraElement::generator(alg, N, "y1");
  AlgebraElement xt(alg, N), ad = x;
  DiagramElement chains;
  Rational fact = 1;
  for (int i = 0; i < N; ++i) {
    if (i) {
      ad = commutator(y, ad);
      fact *= i;
    }
    xt += (bernoulli(i) / fact) * ad;
    chains.add(chain_diagram(i), bernoulli(i) / fact);
  }
  const auto lhs = mod_h(u_map(xt, 2)), rhs = mod_h(gamma_normalize(chains));
  for (int d = 1; d <= N; ++d) {
    CAPTURE(d);
    CHECK(slice({DiagramClass::kSRmodH, 2, d})->is_zero(degree_part(lhs, d) - degree_part(rhs, d)));
  }
}

TEST_CASE("u~ is an isomorphism onto SR modulo H in low degrees") {
  for (const auto& [n, D] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}})
    for (const auto& r : isomorphism_report(n, D)) {
      CAPTURE(n);
      CAPTURE(r.degree);
      CHECK(r.well_defined);
      CHECK(r.injective);
      CHECK(r.surjective);
      CHECK(r.rank_algebra == r.target_dim);
    }
}
