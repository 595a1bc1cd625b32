#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "sl2lab/errors.hpp"
#include "sl2lab/forms.hpp"

namespace sl2lab::experiments {

using namespace sl2lab::strategy;

BobKind parse_bob(const std::string& s) {
  if (s == "random") return BobKind::random;
  if (s == "target" || s == "target_seeking" || s == "target-seeking") return BobKind::target;
  throw InvalidParameter("unknown bob policy '" + s + "' (random|target)");
}

const char* to_string(BobKind b) { return b == BobKind::random ? "random" : "target"; }

AvoidTarget parse_avoid_target(const std::string& s) {
  if (s == "point") return AvoidTarget::point;
  if (s == "arc" || s == "zv") return AvoidTarget::zv_arc;
  throw InvalidParameter("unknown avoidance target '" + s + "' (point|arc)");
}

const char* to_string(AvoidTarget t) { return t == AvoidTarget::point ? "point" : "arc"; }

AvoidResult run_avoid(const AvoidScenario& base, std::uint64_t seed, BobKind bob, int max_rounds) {
  auto sc = instantiate(base, seed);
  if (max_rounds > 0) sc.config.max_rounds = max_rounds;
  Chart chart(sc.y, Quad("0.5"));
  auto alice = alice_hpw_avoid(*sc.Z, chart, sc.consts);
  auto b = bob == BobKind::target ? game::bob_target_seeking(sc.target, seed) : game::bob_random(seed);
  AvoidResult r;
  r.seed = seed;
  r.bob = bob;
  r.k0 = sc.k0;
  r.transcript = game::play(*alice, *b, sc.config);
  const auto& out = r.transcript.outcome;
  alice->observe_final(out.ball);
  r.stats = alice->stats();
  r.stages_done = stage_of(out.ball.radius, r.stats.r1, sc.consts) - 1;
  r.check = verify_avoidance(*sc.Z, sc.y, out.ball.center, sc.stages, sc.consts);
  auto fail = [&](const std::string& w) {
    if (r.why.empty()) r.why = w;
  };
  if (out.kind != game::OutcomeKind::point) fail(std::string("outcome ") + game::to_string(out.kind));
  if (r.stages_done < sc.stages) fail("stages " + std::to_string(r.stages_done));
  if (r.stats.need_violations) fail("need violations");
  if (r.stats.endgame_violations) fail("endgame violations");
  if (r.stats.chain_violations) fail("diameter chain");
  if (!r.check.ok) fail("orbit hits Z at k=" + std::to_string(r.check.worst_k));
  r.pass = r.why.empty();
  return r;
}

const Quad& golden_offset() {
  static const Quad g = (sqrt(Quad(5)) - 1) / 2;
  return g;
}

QLattice golden_lattice() { return one_param(OneParam::upper(), golden_offset()) * QLattice::standard(); }

game::GameConfig bounded_config(int dimension, double beta, int rounds, std::uint64_t seed) {
  game::GameConfig c;
  c.variant = game::Variant::haw;
  c.beta = beta;
  c.dimension = dimension;
  c.domain = {{0, 0, 0}, 1e-6};
  c.max_rounds = rounds;
  c.radius_floor = 1e-20;
  c.seed = seed;
  return c;
}

BoundedResult run_bounded(std::uint64_t seed, int dimension, double beta, int rounds) {
  const auto y = golden_lattice();
  auto inner = alice_bounded_1d(y);
  std::unique_ptr<game::AlicePolicy> alice;
  if (dimension == 1)
    alice = std::move(inner);
  else
    alice = alice_projection_lift(std::move(inner));
  auto bob = game::bob_random(seed);
  BoundedResult r;
  r.seed = seed;
  r.transcript = game::play(*alice, *bob, bounded_config(dimension, beta, rounds, seed));
  const auto& x = r.transcript.outcome.ball.center;
  auto orb = orbit_min_systole(product_chart_point(y, x), Quad(20), Quad("0.01"));
  r.min_systole = num::to_double(orb.systole);
  r.min_systole_t = num::to_double(orb.t);
  auto cf = cf_expand<Quad>(golden_offset() + Quad(x[0]), 30);
  r.cf_depth = cf.depth;
  for (auto a : cf.partial_quotients) r.max_quotient = std::max(r.max_quotient, a);
  if (r.transcript.outcome.kind != game::OutcomeKind::point)
    r.why = std::string("outcome ") + game::to_string(r.transcript.outcome.kind);
  else if (r.min_systole < 0.02)
    r.why = "systole below 0.02";
  else if (r.cf_depth < 30)
    r.why = "cf depth " + std::to_string(r.cf_depth);
  else if (r.max_quotient > 50)
    r.why = "partial quotient " + std::to_string(r.max_quotient);
  r.pass = r.why.empty();
  return r;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace sl2lab::experiments
