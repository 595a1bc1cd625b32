#pragma once

// Alice policies for the hyperplane games: dummy moves, the windowed Z-avoidance
// strategy for the discrete forward orbit, a 1-d bounded-orbit heuristic and its lift
// to a 3-d chart.
//
// Game coordinates are algebra coordinates in the orthonormal frame (e, f, sqrt2 h):
// a game point x stands for exp(x) y (avoidance) or exp(p) h_s y with x = (s, p)
// (projection lift).

#include <memory>
#include <string>
#include <vector>

#include "sl2lab/game.hpp"
#include "sl2lab/geometry.hpp"

namespace sl2lab::strategy {

QAlgebraVector to_algebra(const game::Point& x);
game::Point to_point(const QAlgebraVector& X);

struct AvoidanceConstants {
  double tau = 0, beta = 0;
  int m = 0, n = 0;
  double c = 0;       // transversality constant of Z for H+
  double sigma1 = 0;  // chart bi-Lipschitz radius near Z
  double sigma2_b = 0;
  double sigma = 0, delta = 0, b = 0, epsilon = 0;
  double r0 = 0;
};

// n(m) = floor(log2 m) + 1.
int n_of_m(int m);
// Smallest m >= 1 with beta^-n(m) < e^{2 m tau}. InvalidParameter unless beta < e^{-2 tau}.
int smallest_m(double beta, double tau);
// Human-readable list of violated invariants; empty when all hold.
std::vector<std::string> constant_violations(const AvoidanceConstants& k);

// c from transversality_constant(Z, upper), sigma1 from bilipschitz_radius over the
// samples of Z, sigma2 from sigma2_estimate, the rest by the displayed formulas.
AvoidanceConstants derive_constants(const ZLike& Z, double beta, double tau, double r0);
// Same with sigma1 and sigma2 supplied (no sampling).
AvoidanceConstants constants_from(double c, double sigma1, double sigma2_b, double beta, double tau, double r0);
// Largest r0 for which sigma = e^{2 m tau} r0 (so delta = r0 and no dummy moves are needed).
double natural_r0(const AvoidanceConstants& k);

// Window j of time index k: beta^{-n(j-1)} <= e^{2 k tau} < beta^{-j n}.
int window_of(long k, const AvoidanceConstants& c);
// Inclusive range of k in window j (empty when first > last).
std::pair<long, long> window_range(int j, const AvoidanceConstants& c);
// Stage j of radius r: beta^{n j} r1 < r <= beta^{n(j-1)} r1.
int stage_of(double r, double r1, const AvoidanceConstants& c);

// Diameter chain for A_{j,k} at stage radius r_i:
// 2 e^{2k tau} r_i <= 2 e^{2k tau} beta^{n(j-1)} r1 <= 2 beta^-n r1 <= 2 e^{2 m tau} r1 <= 2 sigma <= sigma2/2.
struct DiameterChain {
  std::array<double, 6> links{};
  int first_broken() const;  // -1 when every link holds
};
DiameterChain diameter_chain(int j, long k, double r_i, double r1, const AvoidanceConstants& c);

// Dummy moves until the radius is <= goal, then delegation. Without a wrapped policy,
// dummy moves continue. HPW dummies are empty lists, HAW dummies a thin slab outside
// the ball, classic dummies the concentric ball.
class AliceDummy : public game::AlicePolicy {
 public:
  AliceDummy(double goal, std::unique_ptr<game::AlicePolicy> wrapped);
  std::string name() const override;
  game::AliceMove move(const game::GameView& view) override;
  // Round at which delegation started (0 while still dummy).
  int delegated_at() const { return start_round_; }

 private:
  double goal_;
  std::unique_ptr<game::AlicePolicy> wrapped_;
  int start_round_ = 0;
  std::vector<game::Ball> tail_;
};
std::unique_ptr<AliceDummy> alice_dummy(double goal, std::unique_ptr<game::AlicePolicy> wrapped = nullptr);

struct AvoidSlab {
  game::Slab slab;  // epsilon = width emitted at the stage's first move
  int stage = 0;
  long k = 0;
  double r_i = 0;   // radius of the stage's first ball
  double need = 0;  // half-width that actually covers the bad set
};

struct AvoidStats {
  double r1 = 0;
  int first_round = 0;  // round of B_1 (after dummy moves)
  int stage = 0;        // current stage
  int stages_closed = 0;
  int relevant = 0;        // (j, k) pairs whose A_{j,k} came near Z
  int need_violations = 0;  // emitted width below the computed need
  int endgame_violations = 0;
  int chain_violations = 0;
  double max_need_ratio = 0;  // max need / (beta^n r_i)
  std::vector<int> slabs_per_stage;
  std::vector<AvoidSlab> slabs;
};

// The HPW avoidance strategy (d = 3): after dummy moves to radius delta, at the first
// move of each stage it bounds A_{j,k} for every k in window j, finds where Z comes within
// R + 2 epsilon, pulls the tangent slab back through the flow and the chart, and emits it
// with width beta^n r_i; later moves of the stage re-emit the slabs still meeting
// Bob's ball, width min(beta^n r_{i(j)}, beta r_l).
class AliceHpwAvoid : public game::AlicePolicy {
 public:
  AliceHpwAvoid(const ZLike& Z, Chart chart, AvoidanceConstants consts);
  std::string name() const override { return "avoid"; }
  game::AliceMove move(const game::GameView& view) override;
  // Closes the stage the final ball ends (play stops before Alice sees it).
  void observe_final(const game::Ball& last);
  const AvoidStats& stats() const { return stats_; }
  const AvoidanceConstants& constants() const { return k_; }

 private:
  void open_stage(int j, const game::Ball& B);
  void close_stage(const game::Ball& B);

  const ZLike* Z_;
  Chart chart_;
  AvoidanceConstants k_;
  NearestPointFinder finder_;
  double coarse_margin_;
  bool started_ = false;
  double stage_r_ = 0;
  std::vector<AvoidSlab> active_;
  AvoidStats stats_;
};

// Throws NotTransversal / ConfigurationError when the setup violates the preconditions.
std::unique_ptr<AliceHpwAvoid> alice_hpw_avoid(const ZLike& Z, const Chart& chart, const AvoidanceConstants& consts);

// Outcome check by orbit simulation: for every k in windows 1..stages, the distance from
// g_tau^k exp(x) y to Z. ok when all exceed epsilon.
struct AvoidCheck {
  bool ok = true;
  long checked = 0;
  double min_ratio = 0;  // min over k of dist / epsilon (capped at 1e6 when far)
  long worst_k = -1;
};
AvoidCheck verify_avoidance(const ZLike& Z, const QLattice& y, const game::Point& x, int stages,
                            const AvoidanceConstants& c);

// A ready-to-play avoidance setup: y is chosen so that g_tau^k0 exp(x*) y lies on Z for a
// seeded x* in the domain and k0 in windows 1..stages.
struct AvoidScenario {
  std::shared_ptr<const ZLike> Z;
  AvoidanceConstants consts;
  int stages = 6;
  QLattice y;
  game::GameConfig config;
  game::Point target{};
  long k0 = 0;
};
enum class AvoidTarget { point, zv_arc };
// Z and constants for a target kind (expensive; share across seeds).
AvoidScenario make_avoid_base(AvoidTarget kind, double a, double beta, double tau, int stages);
AvoidScenario instantiate(const AvoidScenario& base, std::uint64_t seed);

// 1-d absolute-game heuristic for s -> h_s y: at B(c, r) take the shortest vector of
// g_t h_c y with t = ln(1/r)/2 and forbid the beta r-neighborhood of s* = c - v1/v2.
std::unique_ptr<game::AlicePolicy> alice_bounded_1d(const QLattice& y);
// The s*-forbidding policy: always the beta r-neighborhood of a fixed s*.
std::unique_ptr<game::AlicePolicy> alice_avoid_point_1d(double s_star);

// HAW in d = 3 on product-chart coordinates x = (s, p): feeds (x_0, r) to the 1-d policy and
// lifts its slab to the plane family with normal along the first axis.
class AliceProjectionLift : public game::AlicePolicy {
 public:
  explicit AliceProjectionLift(std::unique_ptr<game::AlicePolicy> inner);
  std::string name() const override;
  game::AliceMove move(const game::GameView& view) override;
  const std::vector<game::Ball>& projected() const { return projected_; }

 private:
  std::unique_ptr<game::AlicePolicy> inner_;
  game::GameConfig inner_cfg_;
  std::vector<game::Ball> projected_;
};
std::unique_ptr<AliceProjectionLift> alice_projection_lift(std::unique_ptr<game::AlicePolicy> inner);

// exp(p) h_s y for x = (s, p_f, p_h) in orthonormal coordinates.
QLattice product_chart_point(const QLattice& y, const game::Point& x);

// HPW move made of both policies' slabs (single slabs become one-element lists).
std::unique_ptr<game::AlicePolicy> alice_merge(std::unique_ptr<game::AlicePolicy> a,
                                               std::unique_ptr<game::AlicePolicy> b);

}  // namespace sl2lab::strategy
