#include <gtest/gtest.h>

#include <random>

#include "sl2lab/lattice.hpp"

using namespace sl2lab;

namespace {

// Naive shortest vector: every coefficient pair in a box.
double brute_systole(const Lattice& x, int box) {
  double best = 1e300;
  auto B = x.basis();
  for (int m = -box; m <= box; ++m)
    for (int n = -box; n <= box; ++n) {
      if (m == 0 && n == 0) continue;
      auto v = B.apply({double(m), double(n)});
      best = std::min(best, std::hypot(v[0], v[1]));
    }
  return best;
}

Lattice random_lattice(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> U(-spread, spread);
  auto g = exp_alg(AlgebraVector{U(rng), U(rng), U(rng) / 2});
  return Lattice(g);
}

IntMat random_unimodular(std::mt19937_64& rng) {
  IntMat m = int_identity();
  std::uniform_int_distribution<int> step(-2, 2), which(0, 1);
  for (int i = 0; i < 3; ++i) {
    IntMat e = which(rng) ? IntMat{1, step(rng), 0, 1} : IntMat{1, 0, step(rng), 1};
    m = int_mul(m, e);
  }
  return m;
}

}  // namespace

TEST(Lattice, RejectsBadBases) {
  EXPECT_THROW(Lattice::from_columns({1, 0}, {2, 1e-14}), InvalidLattice);
  EXPECT_THROW(Lattice::from_columns({1, 0}, {0, 2}), InvalidLattice);
  EXPECT_NO_THROW(Lattice::from_columns({0, 1}, {1, 0}));  // det -1 accepted
}

TEST(Reduce, Examples) {
  auto z = reduce(Lattice{});
  EXPECT_DOUBLE_EQ(z.basis().a(), 1);
  EXPECT_DOUBLE_EQ(z.basis().d(), 1);
  EXPECT_DOUBLE_EQ(z.basis().b(), 0);

  auto x = Lattice::from_columns({1, 0}, {5, 1});
  auto r = reduce(x);
  EXPECT_TRUE(r.reduced());
  EXPECT_NEAR(systole(x), 1.0, 1e-15);
  EXPECT_NEAR(brute_systole(x, 10), 1.0, 1e-15);
  EXPECT_NEAR(r.basis().det(), 1.0, 1e-15);

  auto y = one_param(OneParam::diagonal(), 3.0) * Lattice{};
  EXPECT_NEAR(systole(y), std::exp(-3.0), 1e-15);
}

TEST(Reduce, SatisfiesGaussConditionsAndKeepsTheLattice) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_lattice(rng, 2.0);
    auto r = reduce(x);
    auto b1 = r.b1(), b2 = r.b2();
    double n1 = b1[0] * b1[0] + b1[1] * b1[1], n2 = b2[0] * b2[0] + b2[1] * b2[1];
    EXPECT_LE(n1, n2 * (1 + 1e-12));
    EXPECT_LE(std::abs(b1[0] * b2[0] + b1[1] * b2[1]), 0.5 * n1 * (1 + 1e-12));
    EXPECT_NEAR(r.basis().det(), 1.0, 1e-9);
    // r.basis = x.basis * U with U integral
    auto U = x.basis().inverse() * r.basis();
    for (double e : {U.a(), U.b(), U.c(), U.d()}) EXPECT_NEAR(e, std::round(e), 1e-6);
  }
}

TEST(Systole, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_lattice(rng, 1.5);
    EXPECT_NEAR(systole(x), brute_systole(x, 60), 1e-9);
  }
}

TEST(Systole, InvariantUnderIntegerBasisChange) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_lattice(rng, 1.0);
    Lattice y(x.basis() * int_to_group<double>(random_unimodular(rng)));
    EXPECT_NEAR(systole(x), systole(y), 1e-12);
  }
}

TEST(Systole, DiagonalOrbitOfZ2) {
  for (double t : {0.0, 0.5, 2.0, 7.0}) EXPECT_NEAR(systole(one_param(OneParam::diagonal(), t) * Lattice{}), std::exp(-t), 1e-15);
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate(Lattice{}, 1.0).size(), 4u);
  EXPECT_EQ(enumerate(Lattice{}, 1.5).size(), 8u);
  auto pts = enumerate(one_param(OneParam::diagonal(), 1.0) * Lattice{}, 0.5);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(std::abs(pts[0].v[1]), std::exp(-1.0), 1e-15);
  EXPECT_EQ(pts[0].coords[0], 0);
  EXPECT_EQ(std::abs(pts[0].coords[1]), 1);
  EXPECT_THROW(enumerate(Lattice{}, 2e4), ResourceLimit);
}

TEST(Enumerate, CompleteAgainstDoubleLoop) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    auto x = random_lattice(rng, 1.2);
    double R = 0.5 + 3.0 * (i % 7) / 7.0;
    auto got = enumerate(x, R);
    size_t expect = 0;
    auto B = x.basis();
    for (int m = -200; m <= 200; ++m)
      for (int n = -200; n <= 200; ++n) {
        if (m == 0 && n == 0) continue;
        auto v = B.apply({double(m), double(n)});
        if (std::hypot(v[0], v[1]) <= R) ++expect;
      }
    ASSERT_EQ(got.size(), expect);
    for (const auto& p : got) {
      auto v = B.apply({double(p.coords[0]), double(p.coords[1])});
      EXPECT_NEAR(v[0], p.v[0], 1e-9);
      EXPECT_NEAR(v[1], p.v[1], 1e-9);
    }
  }
}

TEST(Enumerate, CoordinatesReferToSuppliedBasis) {
  auto x = Lattice::from_columns({0, 1}, {1, 0});  // det -1
  for (const auto& p : enumerate(x, 1.5)) {
    EXPECT_NEAR(p.coords[0] * 0.0 + p.coords[1] * 1.0, p.v[0], 1e-15);
    EXPECT_NEAR(p.coords[0] * 1.0 + p.coords[1] * 0.0, p.v[1], 1e-15);
  }
}

TEST(OrbitMinSystole, Examples) {
  auto r = orbit_min_systole(Lattice{}, 5.0, 0.01);
  EXPECT_NEAR(r.t, 5.0, 1e-9);
  EXPECT_NEAR(r.systole, std::exp(-5.0), 1e-12);
  // a vector on the axis contracts without bound
  auto s = orbit_min_systole(Lattice{}, 20.0, 0.5);
  EXPECT_LT(s.systole, 1e-8);
  EXPECT_THROW(orbit_min_systole(Lattice{}, 1.0, 2.0), InvalidParameter);
}

// The direct product g_t x loses ~e^{2t} eps in double, so compare against it in Quad.
TEST(OrbitMinSystole, IncrementalEqualsDirect) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    auto x = random_lattice(rng, 1.0);
    auto tr = orbit_systole_trace(x, 10.0, 0.25);
    for (size_t k = 0; k < tr.size(); k += 7) {
      double direct = num::to_double(systole(one_param(OneParam::diagonal(), Quad(tr[k].t)) * x.cast<Quad>()));
      EXPECT_NEAR(tr[k].systole, direct, 1e-9 * (1 + direct));
    }
  }
}

TEST(ContainsPrimitive, Examples) {
  EXPECT_TRUE(contains_primitive(Lattice{}, Vec2<double>{1, 0}, 1e-9));
  EXPECT_FALSE(contains_primitive(Lattice{}, Vec2<double>{2, 0}, 1e-9));
  EXPECT_TRUE(contains_primitive(Lattice{}, Vec2<double>{2, 3}, 1e-9));
  EXPECT_FALSE(contains_primitive(Lattice{}, Vec2<double>{0.5, 0}, 1e-9));
}

TEST(ContainsPrimitive, StabilizerOrbitKeepsV) {
  for (double a : {4.0, -4.0, 1.0}) {
    auto v = v_of_a(a);
    auto seed = Lattice::from_columns(v, {-v[1] / (v[0] * v[0] + v[1] * v[1]), v[0] / (v[0] * v[0] + v[1] * v[1])});
    for (double s = -3; s <= 3; s += 0.37) {
      auto x = one_param(OneParam::stabilizer(a), s) * seed;
      EXPECT_TRUE(contains_primitive(x, v, 1e-9));
    }
  }
}

TEST(DistX, Examples) {
  EXPECT_EQ(dist_X(Lattice{}, Lattice{}).value(), 0.0);
  auto y = one_param(OneParam::diagonal(), 0.01) * Lattice{};
  EXPECT_NEAR(dist_X(Lattice{}, y).value(), 0.01 * std::sqrt(2.0), 1e-6);
  EXPECT_FALSE(dist_X(Lattice{}, one_param(OneParam::diagonal(), 2.0) * Lattice{}).has_value());
  // same lattice, different basis
  EXPECT_NEAR(dist_X(Lattice{}, Lattice::from_columns({1, 0}, {3, 1})).value(), 0.0, 1e-15);
}

TEST(DistX, SymmetricAndTriangle) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> U(-0.05, 0.05);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = random_lattice(rng, 1.0);
    auto y = exp_alg(AlgebraVector{U(rng), U(rng), U(rng)}) * x;
    auto z = exp_alg(AlgebraVector{U(rng), U(rng), U(rng)}) * y;
    auto dxy = dist_X(x, y), dyx = dist_X(y, x), dyz = dist_X(y, z), dxz = dist_X(x, z);
    ASSERT_TRUE(dxy && dyx && dyz && dxz);
    EXPECT_NEAR(*dxy, *dyx, 1e-9);
    EXPECT_LE(*dxz, *dxy + *dyz + 1e-6);
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(DistX, DiagonalFlowIsTwoLipschitzForShortTimes) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-0.03, 0.03), T(0.0, std::log(2.0) / 2);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_lattice(rng, 1.0);
    auto y = exp_alg(AlgebraVector{U(rng), U(rng), U(rng)}) * x;
    auto g = one_param(OneParam::diagonal(), T(rng));
    auto d0 = dist_X(x, y), d1 = dist_X(g * x, g * y);
    ASSERT_TRUE(d0 && d1);
    EXPECT_LE(*d1, 2 * *d0 + 1e-12);
  }
}

TEST(DistX, QuadAgreesWithDouble) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> U(-0.1, 0.1);
  for (int i = 0; i < 100; ++i) {
    auto x = random_lattice(rng, 1.0);
    auto y = exp_alg(AlgebraVector{U(rng), U(rng), U(rng)}) * x;
    auto dq = dist_X(x.cast<Quad>(), y.cast<Quad>());
    ASSERT_TRUE(dq);
    EXPECT_NEAR(num::to_double(*dq), dist_X(x, y).value(), 1e-12);
  }
}
