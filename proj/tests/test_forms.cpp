#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "sl2lab/forms.hpp"

using namespace sl2lab;

namespace {

const long double kSqrt2 = std::sqrt(2.0L);
const long double kPhi = (1.0L + std::sqrt(5.0L)) / 2.0L;
const long double kSqrt3 = std::sqrt(3.0L);

// Exact minimum of |p^2 - 2 q^2| over a box, in integers.
long long pell_min(long long N) {
  long long best = -1;
  for (long long p = -N; p <= N; ++p)
    for (long long q = -N; q <= N; ++q) {
      if (p == 0 && q == 0) continue;
      long long v = std::llabs(p * p - 2 * q * q);
      if (best < 0 || v < best) best = v;
    }
  return best;
}

}  // namespace

TEST(Q0, Examples) {
  EXPECT_EQ(q0(2.0, 2.0), 4.0);
  for (double a : {1.0, 4.0, -9.0}) {
    auto v = v_of_a(a);
    EXPECT_NEAR(q0(v[0], v[1]), a, 1e-12);
  }
  double t = 1.7;
  EXPECT_NEAR(q0(std::exp(t) * 0.3, std::exp(-t) * -2.0), q0(0.3, -2.0), 1e-14);
}

TEST(QLambda, Examples) {
  EXPECT_NEAR(q_lambda(1, 1, kSqrt2), -1.0L, 1e-17L);
  EXPECT_EQ(q_lambda(0, 0, 3.0L), 0.0L);
  EXPECT_NEAR(q_lambda(3, 2, kSqrt2), 1.0L, 1e-17L);
}

TEST(LatticeOfLambda, UnimodularAndValid) {
  for (long double l : {kSqrt2, kPhi, 5.0L}) {
    auto x = lattice_of_lambda(static_cast<double>(l));
    EXPECT_NEAR(x.basis().det(), 1.0, 1e-15);
  }
  EXPECT_THROW(lattice_of_lambda(0.0), InvalidParameter);
  EXPECT_THROW(lattice_of_lambda(-1.0), InvalidParameter);
}

TEST(LatticeOfLambda, Q0MatchesScaledForm) {
  double l = static_cast<double>(kSqrt2);
  auto x = lattice_of_lambda(l);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long long> U(-1000, 1000);
  for (int i = 0; i < 100; ++i) {
    long long p = U(rng), q = U(rng);
    auto v = x.basis().apply({double(p), double(q)});
    double lhs = q0(v[0], v[1]);
    double rhs = static_cast<double>(q_lambda(p, q, kSqrt2) / (2 * kSqrt2));
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(rhs)));
  }
}

TEST(LatticeOfLambda, SystoleOfSqrt2MatchesEnumeration) {
  auto x = lattice_of_lambda(static_cast<double>(kSqrt2));
  auto pts = enumerate(x, 2.0);
  ASSERT_FALSE(pts.empty());
  EXPECT_NEAR(systole(x), pts.front().norm, 1e-15);
  EXPECT_GT(systole(x), 0.3);
}

TEST(ValueSpectrum, Examples) {
  auto s = value_spectrum(Lattice{}, 1);
  std::vector<double> vals;
  for (auto& e : s) vals.push_back(e.value);
  for (double v : {-1.0, 0.0, 1.0}) EXPECT_NE(std::find(vals.begin(), vals.end(), v), vals.end());
  EXPECT_TRUE(std::is_sorted(vals.begin(), vals.end()));

  auto t = value_spectrum(lattice_of_lambda(static_cast<double>(kSqrt2)), 50);
  double mn = 1e300;
  for (auto& e : t) mn = std::min(mn, std::abs(e.value));
  EXPECT_NEAR(mn, 1.0 / (2 * std::sqrt(2.0)), 1e-12);
  EXPECT_EQ(pell_min(50), 1);
}

TEST(ValueSpectrum, SymmetricUnderNegation) {
  auto t = value_spectrum(lattice_of_lambda(1.7), 20);
  std::map<std::array<long long, 2>, double> by;
  for (auto& e : t) by[e.coords] = e.value;
  for (auto& [c, v] : by) EXPECT_EQ(by.at({-c[0], -c[1]}), v);
}

TEST(ValueSpectrum, ScalingCovariance) {
  for (long double l : {kSqrt2, kPhi, 2.5L}) {
    auto t = value_spectrum(lattice_of_lambda(static_cast<double>(l)), 40);
    for (auto& e : t) {
      double want = static_cast<double>(q_lambda(e.coords[0], e.coords[1], l));
      EXPECT_NEAR(e.value * 2 * static_cast<double>(l), want, 1e-9);
    }
  }
}

TEST(ValueSpectrum, Guards) {
  EXPECT_THROW(value_spectrum(Lattice{}, 0), InvalidParameter);
  EXPECT_THROW(value_spectrum(Lattice{}, 200000), InvalidParameter);
  EXPECT_THROW(value_spectrum(Lattice{}, 90000), ResourceLimit);
}

TEST(Gap, PellGapAtZero) {
  auto x = lattice_of_lambda(static_cast<double>(kSqrt2));
  auto g = gap_witness(x, 0.0, 100);
  EXPECT_NEAR(g.gap, 1.0 / (2 * std::sqrt(2.0)), 1e-12);
  // (1,0) and (1,1) both attain |p^2 - 2q^2| = 1; the witness is the lower-height tie.
  EXPECT_EQ(std::llabs(g.coords[0] * g.coords[0] - 2 * g.coords[1] * g.coords[1]), 1);
  auto v = x.basis().apply({1.0, 1.0});
  EXPECT_NEAR(std::abs(q0(v[0], v[1])), g.gap, 1e-12);
  EXPECT_NEAR(gap_at(x, 0.0, 200), 1.0 / (2 * std::sqrt(2.0)), 1e-12);
}

TEST(Gap, ZeroAtSpectrumValuesAndAxisVectors) {
  auto x = lattice_of_lambda(1.3);
  auto s = value_spectrum(x, 10);
  EXPECT_EQ(gap_at(x, s[17].value, 10), 0.0);
  EXPECT_EQ(gap_at(Lattice{}, 0.0, 5), 0.0);
}

TEST(Accumulation, PellValuesRecur) {
  auto pts = accumulation_points(kSqrt2, 100000, 1e-6);
  auto has = [&](double v, double tol) {
    return std::any_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - v) <= tol; });
  };
  EXPECT_TRUE(has(1.0, 1e-6));
  EXPECT_TRUE(has(-1.0, 1e-6));
}

TEST(Accumulation, GoldenRatioFibonacciLimit) {
  // Q(F_{k+1}, F_k) for lambda = phi, computed directly from the recursion.
  long double target = 2 * kPhi / std::sqrt(5.0L);
  long long a = 1, b = 1;
  for (int k = 0; k < 20; ++k) {
    long long c = a + b;
    a = b;
    b = c;
  }
  EXPECT_NEAR(std::abs(static_cast<double>(q_lambda(b, a, kPhi))), static_cast<double>(target), 1e-6);

  auto pts = accumulation_points(kPhi, 100000, 1e-4);
  auto has = [&](double v) {
    return std::any_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - v) <= 1e-3; });
  };
  EXPECT_TRUE(has(static_cast<double>(target)));
  EXPECT_TRUE(has(-static_cast<double>(target)));
}

TEST(Accumulation, NonQuadraticClusterCountGrows) {
  long double pi = 3.141592653589793238462643383279502884L;
  auto small = accumulation_points(pi, 1000, 1e-3);
  auto large = accumulation_points(pi, 100000, 1e-3);
  EXPECT_GT(large.size(), small.size());
}

TEST(ContinuedFraction, GoldenRatio) {
  auto e = cf_expand(static_cast<double>(kPhi), 30);
  EXPECT_EQ(e.a0, 1);
  ASSERT_GE(e.depth, 25);
  for (auto q : e.partial_quotients) EXPECT_EQ(q, 1);
  auto d = cf_diagnostics(e);
  EXPECT_EQ(d.max_quotient, 1);
  EXPECT_EQ(d.period_guess, 1);
}

TEST(ContinuedFraction, Sqrt2) {
  auto e = cf_expand(Quad(sqrt(Quad(2))), 40);
  EXPECT_EQ(e.a0, 1);
  EXPECT_EQ(e.depth, 40);
  for (auto q : e.partial_quotients) EXPECT_EQ(q, 2);
  auto d = cf_diagnostics(e);
  EXPECT_EQ(d.max_quotient, 2);
  EXPECT_EQ(d.period_guess, 1);
}

TEST(ContinuedFraction, RationalTerminates) {
  auto e = cf_expand(7.0 / 3.0, 20);
  EXPECT_TRUE(e.exhausted);
  EXPECT_EQ(e.a0, 2);
  EXPECT_EQ(e.partial_quotients, (std::vector<long long>{3}));
  auto f = cf_expand(5.0, 10);
  EXPECT_TRUE(f.exhausted);
  EXPECT_EQ(f.depth, 0);
}

TEST(ContinuedFraction, PiHasNoPeriod) {
  auto e = cf_expand(Quad(boost::math::constants::pi<Quad>()), 20);
  ASSERT_EQ(e.depth, 20);
  std::vector<long long> known = {7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14, 2, 1, 1, 2, 2, 2, 2, 1};
  EXPECT_EQ(e.partial_quotients, known);
  EXPECT_FALSE(cf_diagnostics(e).period_guess.has_value());
}

TEST(ContinuedFraction, ConvergentsApproximate) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-50, 50);
  for (int i = 0; i < 200; ++i) {
    Quad x = Quad(U(rng)) + Quad(U(rng)) * Quad("1e-17");
    auto e = cf_expand(x, 30);
    for (auto q : e.partial_quotients) EXPECT_GE(q, 1);
    auto cv = convergents(e);
    for (size_t k = 0; k + 1 < cv.size(); ++k) {
      auto [p, q] = cv[k];
      EXPECT_LT(abs(x - p / q), 1 / (q * q));
    }
  }
}

TEST(ContinuedFraction, DepthGuard) {
  EXPECT_THROW(cf_expand(1.5, 0), InvalidParameter);
  EXPECT_THROW(cf_expand(1.5, 61), InvalidParameter);
}

TEST(Dictionary, GapAndBoundedOrbitTogether) {
  for (long double l : {kSqrt2, kPhi, kSqrt3}) {
    auto x = lattice_of_lambda(static_cast<double>(l));
    EXPECT_GT(gap_at(x, 0.0, 200), 0.0);
    EXPECT_GT(orbit_min_systole(x, 20.0, 0.01).systole, 0.0);
  }
}
