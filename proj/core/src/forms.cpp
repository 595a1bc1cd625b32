#include "sl2lab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace sl2lab {

FormLambda::FormLambda(long double l) : lambda(l) {
  if (!(l > 0) || !std::isfinite(l)) throw InvalidParameter("lambda must be positive and finite");
}

long double q_lambda(long long p, long long q, long double lambda) {
  long double lp = static_cast<long double>(p), lq = lambda * static_cast<long double>(q);
  return (lp - lq) * (lp + lq);
}

namespace {

constexpr long long kMaxSpectrumN = 100000;
constexpr double kMaxSpectrumPoints = 5e7;

// Given-basis matrix of x, columns may have det -1.
std::array<double, 4> given_basis(const Lattice& x) {
  auto Uinv = int_inverse(x.to_given());
  auto G = x.basis() * int_to_group<double>(Uinv);
  return {G.a(), G.b(), G.c(), G.d()};
}

void check_height(long long N) {
  if (N < 1) throw InvalidParameter("height N must be positive");
  if (N > kMaxSpectrumN) throw InvalidParameter("height N exceeds 1e5");
}

}  // namespace

std::vector<SpectrumEntry> value_spectrum(const Lattice& x, long long N) {
  check_height(N);
  double side = 2.0 * static_cast<double>(N) + 1.0;
  if (side * side > kMaxSpectrumPoints) throw ResourceLimit("value_spectrum: box too large to materialize");
  auto G = given_basis(x);
  std::vector<SpectrumEntry> out;
  out.reserve(static_cast<size_t>(side * side));
  for (long long m = -N; m <= N; ++m) {
    for (long long n = -N; n <= N; ++n) {
      if (m == 0 && n == 0) continue;
      double vx = G[0] * m + G[1] * n, vy = G[2] * m + G[3] * n;
      out.push_back({q0(vx, vy), {m, n}});
    }
  }
  std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    return std::tie(a.value, a.coords) < std::tie(b.value, b.coords);
  });
  return out;
}

GapResult gap_witness(const Lattice& x, double a, long long N) {
  check_height(N);
  double side = 2.0 * static_cast<double>(N) + 1.0;
  if (side * side > 4e10) throw ResourceLimit("gap_at: box too large");
  auto G = given_basis(x);
  auto key = [](long long m, long long n) {
    return std::make_tuple(std::max(std::llabs(m), std::llabs(n)), m < 0, n < 0, m, n);
  };
  GapResult best{std::numeric_limits<double>::infinity(), 0, {0, 0}};
  for (long long m = -N; m <= N; ++m) {
    for (long long n = -N; n <= N; ++n) {
      if (m == 0 && n == 0) continue;
      double vx = G[0] * m + G[1] * n, vy = G[2] * m + G[3] * n;
      double v = q0(vx, vy);
      double g = std::abs(v - a);
      bool better = !std::isfinite(best.gap);
      if (!better) {
        double tie = 1e-12 * (1.0 + best.gap);
        better = g < best.gap - tie;
        if (!better && std::abs(g - best.gap) <= tie) better = key(m, n) < key(best.coords[0], best.coords[1]);
      }
      if (better) best = {g, v, {m, n}};
    }
  }
  return best;
}

double gap_at(const Lattice& x, double a, long long N) { return gap_witness(x, a, N).gap; }

std::vector<double> accumulation_points(long double lambda, long long N, double cluster_tol, double window) {
  FormLambda checked(lambda);
  if (N < 100) throw InvalidParameter("accumulation_points: N must be at least 100");
  if (N > 100000000) throw ResourceLimit("accumulation_points: N too large");
  if (!(cluster_tol > 0)) throw InvalidParameter("cluster_tol must be positive");
  long long q_lo = static_cast<long long>(std::ceil(std::sqrt(static_cast<long double>(N))));
  std::vector<long double> values;
  for (long long q = q_lo; q <= N; ++q) {
    long double c = lambda * static_cast<long double>(q);
    long double half = window / c + 1;
    long long p_lo = static_cast<long long>(std::ceil(c - half));
    long long p_hi = static_cast<long long>(std::floor(c + half));
    for (long long p = std::max(0LL, p_lo); p <= p_hi; ++p) {
      long double v = (p - c) * (p + c);
      if (std::abs(v) <= window) values.push_back(v);
    }
  }
  std::sort(values.begin(), values.end());
  std::vector<double> centres;
  size_t i = 0;
  while (i < values.size()) {
    size_t j = i + 1;
    long double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] <= cluster_tol) sum += values[j++];
    centres.push_back(static_cast<double>(sum / static_cast<long double>(j - i)));
    i = j;
  }
  return centres;
}

template <class T>
CFExpansion cf_expand(const T& x, int depth) {
  using std::abs;
  using std::floor;
  if (depth < 1 || depth > 60) throw InvalidParameter("cf_expand: depth must be in [1, 60]");
  if (!std::isfinite(num::to_double(x))) throw InvalidParameter("cf_expand: x must be finite");
  const T eps = num::epsilon<T>();
  const T scale = std::max(T(1), T(abs(x)));
  CFExpansion e;
  T a = floor(x);
  e.a0 = num::to_ll(a);
  T frac = x - a;
  T p_prev = T(1), q_prev = T(0), p = a, q = T(1);
  auto reproduces = [&] { return abs(x - p / q) <= T(8) * eps * scale; };
  if (reproduces()) {
    e.exhausted = true;
    return e;
  }
  while (static_cast<int>(e.partial_quotients.size()) < depth) {
    if (q * q * eps * T(64) * scale > T(1) || !(frac > T(0))) {
      e.exhausted = true;
      break;
    }
    T xk = T(1) / frac;
    T ak = floor(xk);
    frac = xk - ak;
    e.partial_quotients.push_back(num::to_ll(ak));
    T pn = ak * p + p_prev, qn = ak * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    if (reproduces()) {
      e.exhausted = true;
      break;
    }
  }
  // [..., a, 1] and [..., a + 1] denote the same rational; keep the canonical one.
  auto& pq = e.partial_quotients;
  if (e.exhausted && pq.size() >= 2 && pq.back() == 1) {
    pq.pop_back();
    pq.back() += 1;
  }
  e.depth = static_cast<int>(pq.size());
  return e;
}

template CFExpansion cf_expand<double>(const double&, int);
template CFExpansion cf_expand<long double>(const long double&, int);
template CFExpansion cf_expand<Quad>(const Quad&, int);

std::vector<std::pair<Quad, Quad>> convergents(const CFExpansion& e) {
  std::vector<std::pair<Quad, Quad>> out;
  Quad p_prev = 1, q_prev = 0, p = Quad(e.a0), q = 1;
  out.emplace_back(p, q);
  for (long long ak : e.partial_quotients) {
    Quad pn = Quad(ak) * p + p_prev, qn = Quad(ak) * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    out.emplace_back(p, q);
  }
  return out;
}

CFDiagnostics cf_diagnostics(const CFExpansion& e) {
  CFDiagnostics d;
  const auto& a = e.partial_quotients;
  for (long long v : a) d.max_quotient = std::max(d.max_quotient, v);
  const int L = static_cast<int>(a.size());
  for (int p = 1; p <= L / 3; ++p) {
    // longest suffix on which a[i] == a[i + p]
    int s = L - p;
    while (s > 0 && a[s - 1] == a[s - 1 + p]) --s;
    // the periodic block then spans a[s .. L-1]; require two full cycles
    if (L - s >= 2 * p && s < L - p) {
      d.period_guess = p;
      break;
    }
  }
  return d;
}

}  // namespace sl2lab
