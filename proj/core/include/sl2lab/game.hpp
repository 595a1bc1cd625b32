#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace sl2lab::game {

// Points live in R^d, d <= 3; unused trailing coordinates stay zero.
using Point = std::array<double, 3>;

double dot(const Point& a, const Point& b);
double norm(const Point& a);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);

// Closed-set predicates get this much room, scaled by the current radius.
inline constexpr double kSlack = 1e-12;

struct Ball {
  Point center{};
  double radius = 0;
};

// Points within epsilon of the hyperplane through anchor orthogonal to normal.
struct Slab {
  Point anchor{};
  Point normal{};
  double epsilon = 0;
};

enum class Variant { classic, haw, hpw };
const char* to_string(Variant v);
Variant parse_variant(const std::string& s);

// Default HPW guard for d > 1; d = 1 uses the sharp 1/5.
double hpw_beta0(int d);

struct GameConfig {
  Variant variant = Variant::hpw;
  double alpha = 0.5;  // classic only
  double beta = 0.1;
  int dimension = 1;
  Ball domain{{0, 0, 0}, 1};
  int max_rounds = 100;
  double radius_floor = 1e-12;
  std::uint64_t seed = 0;

  // Throws InvalidParameter on anything outside the variant's parameter range.
  void validate() const;
};

// Alice plays a ball (classic), one slab (haw) or a finite list of slabs (hpw).
using AliceMove = std::variant<Ball, Slab, std::vector<Slab>>;

// Referee predicates. All containment, radius and disjointness tests are closed with
// slack kSlack * r; a ball touching a slab counts as meeting it.
bool ball_inside(const Ball& inner, const Ball& outer);
bool meets(const Ball& b, const Slab& s);
bool classic_alice_legal(const Ball& B, const Ball& A, double alpha);
bool classic_bob_legal(const Ball& A, const Ball& B_next, double beta);
bool slab_alice_legal(const Ball& B, const Slab& s, double beta);
bool haw_bob_legal(const Ball& B, const Slab& s, const Ball& B_next, double beta);
// Bob must avoid at least ceil(N/2) of the N slabs.
bool hpw_bob_legal(const Ball& B, const std::vector<Slab>& slabs, const Ball& B_next, double beta);
int slabs_avoided(const Ball& b, const std::vector<Slab>& slabs);

struct Verdict {
  bool legal = true;
  std::string reason;
};

// Stateful referee: holds B_i and the pending Alice move.
class Referee {
 public:
  explicit Referee(GameConfig cfg);
  const GameConfig& config() const { return cfg_; }
  const Ball& ball() const { return ball_; }
  int round() const { return round_; }

  // WrongVariant if the move does not belong to the configured game.
  Verdict alice(const AliceMove& move);
  // Only after an accepted Alice move. On success B_{i+1} becomes current.
  Verdict bob(const Ball& next);

 private:
  GameConfig cfg_;
  Ball ball_;
  int round_ = 1;
  std::optional<AliceMove> pending_;
};

// What a policy sees: the configuration, the round index i, and Bob's balls B_1..B_i.
struct GameView {
  const GameConfig* config = nullptr;
  int round = 1;
  const std::vector<Ball>* balls = nullptr;
  const Ball& current() const { return balls->back(); }
};

class AlicePolicy {
 public:
  virtual ~AlicePolicy() = default;
  virtual std::string name() const = 0;
  virtual AliceMove move(const GameView& view) = 0;
};

class BobPolicy {
 public:
  virtual ~BobPolicy() = default;
  virtual std::string name() const = 0;
  // nullopt means the policy found no legal ball.
  virtual std::optional<Ball> move(const GameView& view, const AliceMove& alice) = 0;
};

struct TranscriptEntry {
  int round = 0;
  bool alice = true;
  std::variant<AliceMove, Ball> move;
  Verdict verdict;
};

enum class OutcomeKind { point, region, illegal, bob_stuck, policy_error };
const char* to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::region;
  Ball ball;              // last accepted ball; its center is the outcome point
  int round = 0;          // round at which play stopped
  std::string offender;   // "alice" or "bob" for illegal / policy_error
  std::string message;
};

struct Transcript {
  GameConfig config;
  std::string alice_name, bob_name;
  std::vector<TranscriptEntry> entries;
  std::vector<Ball> balls;  // B_1, B_2, ...
  Outcome outcome;

  // Line records: a '#' header with the resolved configuration, then one line per move,
  // then the outcome line. Doubles are printed with %.17g.
  std::string serialize() const;
};

// B_1 is config.domain. Alternates Alice and Bob until radius <= radius_floor (point),
// max_rounds (region), an illegal move, a stuck Bob, or a policy exception.
Transcript play(AlicePolicy& alice, BobPolicy& bob, const GameConfig& config);

// Built-in policies. Each owns an engine seeded from (seed, role tag).
std::unique_ptr<AlicePolicy> alice_random(std::uint64_t seed);
std::unique_ptr<BobPolicy> bob_random(std::uint64_t seed);
std::unique_ptr<BobPolicy> bob_target_seeking(Point target, std::uint64_t seed);

// Legal-move search used by the built-in Bobs: a deterministic candidate grid of centers
// (current center, +-axes, +-slab normals and the target direction at several offsets,
// plus the target clamped into the container)
// times 8 geometric radii in [beta r, r], then rejection sampling, then an exact sweep along
// the grid directions at radius beta r.
std::vector<Ball> candidate_grid(const GameConfig& cfg, const Ball& B, const AliceMove& alice,
                                 const std::optional<Point>& target);
bool bob_legal(const GameConfig& cfg, const Ball& B, const AliceMove& alice, const Ball& next);
// Legal balls of the smallest allowed radius found on lines through the center of the
// container: one per maximal legal segment on each line (its midpoint) plus segment ends.
std::vector<Ball> sweep_for_legal(const GameConfig& cfg, const Ball& B, const AliceMove& alice,
                                  const std::vector<Point>& directions);

}  // namespace sl2lab::game
