#pragma once

// Game runners shared by the CLI and the acceptance suite. Each run is a pure function of
// its arguments and seed.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sl2lab/strategy.hpp"

namespace sl2lab::experiments {

enum class BobKind { random, target };
BobKind parse_bob(const std::string& s);
const char* to_string(BobKind b);
strategy::AvoidTarget parse_avoid_target(const std::string& s);
const char* to_string(strategy::AvoidTarget t);

struct AvoidResult {
  std::uint64_t seed = 0;
  strategy::AvoidTarget target = strategy::AvoidTarget::point;
  BobKind bob = BobKind::random;
  game::Transcript transcript;
  strategy::AvoidStats stats;
  strategy::AvoidCheck check;
  long k0 = 0;
  int stages_done = 0;
  bool pass = false;
  std::string why;  // first failed condition
};

AvoidResult run_avoid(const strategy::AvoidScenario& base, std::uint64_t seed, BobKind bob,
                      int max_rounds = 0);

// The lifted bounded-orbit game: HAW around the golden point s0 = (sqrt5 - 1)/2, played in
// the shifted coordinate x_0 = s - s0 on B(0, 1e-6) with floor 1e-20.
struct BoundedResult {
  std::uint64_t seed = 0;
  game::Transcript transcript;
  double min_systole = 0;
  double min_systole_t = 0;
  long long max_quotient = 0;
  int cf_depth = 0;
  bool pass = false;
  std::string why;
};

const Quad& golden_offset();
QLattice golden_lattice();
game::GameConfig bounded_config(int dimension, double beta, int rounds, std::uint64_t seed);
BoundedResult run_bounded(std::uint64_t seed, int dimension = 3, double beta = 0.2, int rounds = 300);

// Runs job(i) for i in [0, n) on `threads` workers; results land at index i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace sl2lab::experiments
