#pragma once

#include "ellassoc/algebra.hpp"
#include "ellassoc/associator.hpp"
#include "ellassoc/lie.hpp"

namespace ellassoc {

// T = [B, A]
LieSeries t_of(int truncation);
// A~ = sum_i B_i / i! (ad B)^i (A)
LieSeries a_tilde(int truncation);

// The pair (X, Y) in the completed free algebra on {A, B}:
//   X = phi(A~, T) exp(A~) phi(A~, T)^-1
//   Y = exp(T/2) phi(-A~ - T, T) exp(B) phi(A~, T)^-1
struct EllipticPair {
  AlgebraElement x;
  AlgebraElement y;
};

EllipticPair build_e_phi(const AssociatorSeries& phi, int truncation);

constexpr int kEllipticIdentities = 4;

// LHS - RHS of elliptic identity 1 (in U(t_{1,2})) or 2, 3, 4 (in U(t_{1,3})),
// truncated at `truncation`.
AlgebraElement elliptic_residual(const EllipticPair& pair, const AssociatorSeries& phi, int identity,
                                 int truncation, MixedSign sign = MixedSign::kPlus);

}  // namespace ellassoc
