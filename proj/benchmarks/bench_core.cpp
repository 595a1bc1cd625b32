#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "experiments.hpp"
#include "sl2lab/forms.hpp"
#include "sl2lab/geometry.hpp"

using namespace sl2lab;

static void BM_Systole(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-2, 2);
  std::vector<Lattice> xs;
  for (int i = 0; i < 256; ++i) {
    double e = std::exp(U(rng)), s = U(rng);
    xs.push_back(Lattice::from_columns({e, 0}, {e * s, 1 / e}));
  }
  size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(systole(xs[i++ & 255]));
}
BENCHMARK(BM_Systole);

static void BM_SystoleQuad(benchmark::State& st) {
  auto x = one_param(OneParam::upper(), Quad("0.618")) * QLattice::standard();
  x = one_param(OneParam::diagonal(), Quad(7)) * x;
  for (auto _ : st) benchmark::DoNotOptimize(systole(x));
}
BENCHMARK(BM_SystoleQuad);

static void BM_GapAt(benchmark::State& st) {
  auto x = lattice_of_lambda(std::sqrt(2.0));
  for (auto _ : st) benchmark::DoNotOptimize(gap_at(x, 0.0, st.range(0)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GapAt)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

static void BM_OrbitMinSystole(benchmark::State& st) {
  auto x = lattice_of_lambda((1 + std::sqrt(5.0)) / 2);
  for (auto _ : st) benchmark::DoNotOptimize(orbit_min_systole(x, 20.0, 0.01));
}
BENCHMARK(BM_OrbitMinSystole);

static void BM_Accumulation(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(accumulation_points(std::sqrt(2.0L), st.range(0), 1e-6));
}
BENCHMARK(BM_Accumulation)->Arg(10000)->Arg(100000);

static void BM_ExpLogQuad(benchmark::State& st) {
  QAlgebraVector X{Quad("0.3"), Quad("-0.2"), Quad("0.1")};
  for (auto _ : st) benchmark::DoNotOptimize(log_alg(exp_alg(X)));
}
BENCHMARK(BM_ExpLogQuad);

static void BM_NearestPointZv(benchmark::State& st) {
  auto Z = make_Zv(4.0, 1).front();
  NearestPointFinder near(Z);
  auto x = exp_alg(QAlgebraVector{Quad("1e-3"), Quad(0), Quad(0)}) * Z.at(Quad("1.3"));
  for (auto _ : st) benchmark::DoNotOptimize(near.find(x));
}
BENCHMARK(BM_NearestPointZv);

static void BM_HawRandomGame(benchmark::State& st) {
  game::GameConfig cfg;
  cfg.variant = game::Variant::haw;
  cfg.beta = 0.3;
  cfg.dimension = static_cast<int>(st.range(0));
  std::uint64_t seed = 0;
  for (auto _ : st) {
    auto a = game::alice_random(seed);
    auto b = game::bob_random(seed++);
    benchmark::DoNotOptimize(game::play(*a, *b, cfg));
  }
}
BENCHMARK(BM_HawRandomGame)->DenseRange(1, 3);

static void BM_AvoidGame(benchmark::State& st) {
  auto base = strategy::make_avoid_base(st.range(0) ? strategy::AvoidTarget::zv_arc : strategy::AvoidTarget::point, 4,
                                        0.07, 1, 6);
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(experiments::run_avoid(base, seed++, experiments::BobKind::target));
}
BENCHMARK(BM_AvoidGame)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_BoundedGame(benchmark::State& st) {
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(experiments::run_bounded(seed++));
}
BENCHMARK(BM_BoundedGame)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
