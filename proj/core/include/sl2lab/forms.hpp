#pragma once

// Values of binary quadratic forms at integer points, via the lattice
// dictionary Q_lambda(p, q) = 2 lambda * Q0(g (p, q)).

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "sl2lab/lattice.hpp"

namespace sl2lab {

struct FormLambda {
  long double lambda;
  explicit FormLambda(long double l);
};

template <class T>
T q0(const T& x, const T& y) {
  return x * y;
}

// p^2 - lambda^2 q^2, evaluated as (p - lambda q)(p + lambda q) to keep the
// small factor accurate.
long double q_lambda(long long p, long long q, long double lambda);

// Basis (1/sqrt(2 lambda)) [1 -lambda; 1 lambda].
template <class T>
BasicLattice<T> lattice_of_lambda(const T& lambda) {
  using std::sqrt;
  if (!(lambda > T(0))) throw InvalidParameter("lattice_of_lambda: lambda must be positive");
  T s = T(1) / sqrt(T(2) * lambda);
  return BasicLattice<T>(BasicGroupElement<T>::unchecked(s, -lambda * s, s, lambda * s));
}

struct SpectrumEntry {
  double value;
  std::array<long long, 2> coords;  // in the lattice's given basis
};

// All Q0 values at nonzero lattice points with max-norm coordinates <= N,
// sorted by (value, coords).
std::vector<SpectrumEntry> value_spectrum(const Lattice& x, long long N);

struct GapResult {
  double gap;
  double value;
  std::array<long long, 2> coords;
};

// Infimum of |Q0 - a| over the height-N box; near-ties resolve to the lowest
// height, then to coordinates with nonnegative entries, then lexicographically.
GapResult gap_witness(const Lattice& x, double a, long long N);
double gap_at(const Lattice& x, double a, long long N);

// Cluster centres of the values p^2 - lambda^2 q^2 with sqrt(N) <= q <= N and
// |value| <= window. Values closer than cluster_tol chain into one cluster.
std::vector<double> accumulation_points(long double lambda, long long N, double cluster_tol, double window = 10.0);

struct CFExpansion {
  long long a0 = 0;
  std::vector<long long> partial_quotients;
  int depth = 0;           // number of partial quotients produced
  bool exhausted = false;  // stopped early: rational input or precision spent
};

// depth in [1, 60]. Stops early once x is reproduced to working precision or the
// next quotient would not be reliable (q_k^2 * eps * 64 > 1).
template <class T>
CFExpansion cf_expand(const T& x, int depth);

// Convergents (p_k, q_k), k = 0..depth, exact while q_k < 2^113.
std::vector<std::pair<Quad, Quad>> convergents(const CFExpansion& e);

struct CFDiagnostics {
  long long max_quotient = 0;
  std::optional<int> period_guess;
};

CFDiagnostics cf_diagnostics(const CFExpansion& e);

}  // namespace sl2lab
