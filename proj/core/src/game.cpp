#include "sl2lab/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sl2lab/errors.hpp"

namespace sl2lab::game {

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Point& a) { return std::sqrt(dot(a, a)); }
Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }

const char* to_string(Variant v) {
  switch (v) {
    case Variant::classic: return "classic";
    case Variant::haw: return "haw";
    case Variant::hpw: return "hpw";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "classic") return Variant::classic;
  if (s == "haw") return Variant::haw;
  if (s == "hpw") return Variant::hpw;
  throw InvalidParameter("unknown game variant '" + s + "'");
}

double hpw_beta0(int d) { return d == 1 ? 0.2 : 1.0 / (4 * d + 1); }

void GameConfig::validate() const {
  if (dimension < 1 || dimension > 3) throw InvalidParameter("dimension must be 1, 2 or 3");
  auto open01 = [](double x) { return x > 0 && x < 1; };
  switch (variant) {
    case Variant::classic:
      if (!open01(alpha) || !open01(beta)) throw InvalidParameter("classic game needs alpha, beta in (0,1)");
      break;
    case Variant::haw:
      if (!(beta > 0 && beta < 1.0 / 3)) throw InvalidParameter("haw needs beta in (0,1/3)");
      break;
    case Variant::hpw:
      if (!(beta > 0 && beta < hpw_beta0(dimension)))
        throw InvalidParameter("hpw needs beta in (0," + std::to_string(hpw_beta0(dimension)) + ") in this dimension");
      break;
  }
  if (!(domain.radius > 0) || !std::isfinite(domain.radius)) throw InvalidParameter("domain radius must be positive");
  for (int k = dimension; k < 3; ++k)
    if (domain.center[k] != 0) throw InvalidParameter("domain center has coordinates beyond the dimension");
  if (max_rounds < 0) throw InvalidParameter("max_rounds must be nonnegative");
  if (!(radius_floor > 0)) throw InvalidParameter("radius_floor must be positive");
}

bool ball_inside(const Ball& inner, const Ball& outer) {
  return norm(inner.center - outer.center) + inner.radius <= outer.radius * (1 + kSlack);
}

bool meets(const Ball& b, const Slab& s) {
  double d = std::abs(dot(b.center - s.anchor, s.normal));
  return d <= s.epsilon + b.radius + kSlack * (b.radius + s.epsilon);
}

bool classic_alice_legal(const Ball& B, const Ball& A, double alpha) {
  double tol = kSlack * B.radius;
  return std::abs(A.radius - alpha * B.radius) <= tol &&
         norm(A.center - B.center) <= (1 - alpha) * B.radius + tol;
}

bool classic_bob_legal(const Ball& A, const Ball& B_next, double beta) {
  double tol = kSlack * A.radius;
  return std::abs(B_next.radius - beta * A.radius) <= tol &&
         norm(B_next.center - A.center) <= (1 - beta) * A.radius + tol;
}

bool slab_alice_legal(const Ball& B, const Slab& s, double beta) {
  for (double x : s.anchor)
    if (!std::isfinite(x)) return false;
  return std::abs(norm(s.normal) - 1) <= 1e-12 && s.epsilon > 0 && s.epsilon <= beta * B.radius * (1 + kSlack);
}

namespace {

bool bob_radius_ok(const Ball& B, const Ball& next, double beta) {
  return std::isfinite(next.radius) && next.radius >= beta * B.radius * (1 - kSlack) && ball_inside(next, B);
}

}  // namespace

bool haw_bob_legal(const Ball& B, const Slab& s, const Ball& B_next, double beta) {
  return bob_radius_ok(B, B_next, beta) && !meets(B_next, s);
}

int slabs_avoided(const Ball& b, const std::vector<Slab>& slabs) {
  int n = 0;
  for (const auto& s : slabs)
    if (!meets(b, s)) ++n;
  return n;
}

bool hpw_bob_legal(const Ball& B, const std::vector<Slab>& slabs, const Ball& B_next, double beta) {
  int need = static_cast<int>((slabs.size() + 1) / 2);
  return bob_radius_ok(B, B_next, beta) && slabs_avoided(B_next, slabs) >= need;
}

bool bob_legal(const GameConfig& cfg, const Ball& B, const AliceMove& alice, const Ball& next) {
  switch (cfg.variant) {
    case Variant::classic: return classic_bob_legal(std::get<Ball>(alice), next, cfg.beta);
    case Variant::haw: return haw_bob_legal(B, std::get<Slab>(alice), next, cfg.beta);
    case Variant::hpw: return hpw_bob_legal(B, std::get<std::vector<Slab>>(alice), next, cfg.beta);
  }
  return false;
}

Referee::Referee(GameConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  ball_ = cfg_.domain;
}

Verdict Referee::alice(const AliceMove& move) {
  auto wrong = [&](const char* what) {
    throw WrongVariant(std::string(what) + " is not a move of the " + to_string(cfg_.variant) + " game");
  };
  Verdict v;
  switch (cfg_.variant) {
    case Variant::classic: {
      if (!std::holds_alternative<Ball>(move)) wrong("a slab move");
      if (!classic_alice_legal(ball_, std::get<Ball>(move), cfg_.alpha)) v = {false, "alice ball violates the classic rules"};
      break;
    }
    case Variant::haw: {
      if (!std::holds_alternative<Slab>(move)) wrong(std::holds_alternative<Ball>(move) ? "a ball" : "a slab list");
      if (!slab_alice_legal(ball_, std::get<Slab>(move), cfg_.beta)) v = {false, "slab width exceeds beta r or bad normal"};
      break;
    }
    case Variant::hpw: {
      if (!std::holds_alternative<std::vector<Slab>>(move)) wrong(std::holds_alternative<Ball>(move) ? "a ball" : "a single slab");
      for (const auto& s : std::get<std::vector<Slab>>(move))
        if (!slab_alice_legal(ball_, s, cfg_.beta)) v = {false, "slab width exceeds beta r or bad normal"};
      break;
    }
  }
  if (v.legal) pending_ = move;
  return v;
}

Verdict Referee::bob(const Ball& next) {
  if (!pending_) throw ConfigurationError("referee: Bob moved before an accepted Alice move");
  if (!bob_legal(cfg_, ball_, *pending_, next)) return {false, "bob ball violates the rules"};
  if (cfg_.variant == Variant::classic && !ball_inside(next, Ball{ball_.center, ball_.radius * (1 + 4 * kSlack)}))
    throw ConfigurationError("referee: classic nesting failed for a legal move");
  ball_ = next;
  pending_.reset();
  ++round_;
  return {};
}

namespace {

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

Point unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> N(0, 1);
  for (;;) {
    Point p{};
    for (int k = 0; k < d; ++k) p[k] = N(rng);
    double n = norm(p);
    if (n > 1e-9) return (1 / n) * p;
  }
}

Point in_ball(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> U(0, 1);
  return std::pow(U(rng), 1.0 / d) * unit(rng, d);
}

const std::vector<Slab>* slabs_of(const AliceMove& m, std::vector<Slab>& one) {
  if (auto* s = std::get_if<Slab>(&m)) {
    one = {*s};
    return &one;
  }
  if (auto* v = std::get_if<std::vector<Slab>>(&m)) return v;
  return nullptr;
}

// Bob's container ball and the admissible radius range.
struct Frame {
  Ball container;
  double r_min, r_max;
};

Frame frame_of(const GameConfig& cfg, const Ball& B, const AliceMove& alice) {
  if (cfg.variant == Variant::classic) {
    const auto& A = std::get<Ball>(alice);
    double r = cfg.beta * A.radius;
    return {A, r, r};
  }
  return {B, cfg.beta * B.radius, B.radius};
}

std::vector<Point> grid_directions(const GameConfig& cfg, const AliceMove& alice, const std::optional<Point>& toward) {
  std::vector<Point> dirs;
  for (int k = 0; k < cfg.dimension; ++k) {
    Point e{};
    e[k] = 1;
    dirs.push_back(e);
    dirs.push_back(-1.0 * e);
  }
  std::vector<Slab> one;
  if (auto* slabs = slabs_of(alice, one))
    for (const auto& s : *slabs) {
      dirs.push_back(s.normal);
      dirs.push_back(-1.0 * s.normal);
    }
  if (toward && norm(*toward) > 0) dirs.push_back((1 / norm(*toward)) * *toward);
  return dirs;
}

class AliceRandom : public AlicePolicy {
 public:
  explicit AliceRandom(std::uint64_t seed) : rng_(engine_for(seed, 0xA11CE)) {}
  std::string name() const override { return "random"; }
  AliceMove move(const GameView& view) override {
    const auto& cfg = *view.config;
    const Ball& B = view.current();
    std::uniform_real_distribution<double> U(0, 1);
    auto slab = [&] {
      Slab s;
      s.anchor = B.center + B.radius * in_ball(rng_, cfg.dimension);
      s.normal = unit(rng_, cfg.dimension);
      s.epsilon = cfg.beta * B.radius * (1 - U(rng_));
      return s;
    };
    switch (cfg.variant) {
      case Variant::classic:
        return Ball{B.center + (1 - cfg.alpha) * B.radius * in_ball(rng_, cfg.dimension), cfg.alpha * B.radius};
      case Variant::haw: return slab();
      case Variant::hpw: {
        std::vector<Slab> v(std::uniform_int_distribution<int>(0, 5)(rng_));
        for (auto& s : v) s = slab();
        return v;
      }
    }
    return std::vector<Slab>{};
  }

 private:
  std::mt19937_64 rng_;
};

class BobRandom : public BobPolicy {
 public:
  explicit BobRandom(std::uint64_t seed) : rng_(engine_for(seed, 0xB0B)) {}
  std::string name() const override { return "random"; }
  std::optional<Ball> move(const GameView& view, const AliceMove& alice) override {
    const auto& cfg = *view.config;
    const Ball& B = view.current();
    auto grid = candidate_grid(cfg, B, alice, std::nullopt);
    std::shuffle(grid.begin(), grid.end(), rng_);
    for (const auto& c : grid)
      if (bob_legal(cfg, B, alice, c)) return c;
    Frame f = frame_of(cfg, B, alice);
    std::uniform_real_distribution<double> U(0, 1);
    for (int tries = 0; tries < 2000; ++tries) {
      double r = f.r_min * std::pow(f.r_max / f.r_min, U(rng_));
      Ball c{f.container.center + (f.container.radius - r) * in_ball(rng_, cfg.dimension), r};
      if (bob_legal(cfg, B, alice, c)) return c;
    }
    auto dirs = grid_directions(cfg, alice, std::nullopt);
    for (int k = 0; k < 16; ++k) dirs.push_back(unit(rng_, cfg.dimension));
    auto swept = sweep_for_legal(cfg, B, alice, dirs);
    if (swept.empty()) return std::nullopt;
    return swept[std::uniform_int_distribution<size_t>(0, swept.size() - 1)(rng_)];
  }

 private:
  std::mt19937_64 rng_;
};

class BobTarget : public BobPolicy {
 public:
  BobTarget(Point target, std::uint64_t seed) : target_(target), rng_(engine_for(seed, 0x7A76E7)) {}
  std::string name() const override { return "target_seeking"; }
  std::optional<Ball> move(const GameView& view, const AliceMove& alice) override {
    const auto& cfg = *view.config;
    const Ball& B = view.current();
    std::optional<Ball> best;
    auto consider = [&](const Ball& c) {
      if (!bob_legal(cfg, B, alice, c)) return;
      double d = norm(c.center - target_);
      if (!best) {
        best = c;
        return;
      }
      double bd = norm(best->center - target_);
      if (d < bd || (d == bd && c.radius < best->radius)) best = c;
    };
    Frame f = frame_of(cfg, B, alice);
    for (const auto& c : candidate_grid(cfg, B, alice, target_)) consider(c);
    if (!best) {
      auto dirs = grid_directions(cfg, alice, target_ - f.container.center);
      for (int k = 0; k < 16; ++k) dirs.push_back(unit(rng_, cfg.dimension));
      for (const auto& c : sweep_for_legal(cfg, B, alice, dirs)) consider(c);
    }
    return best;
  }

 private:
  Point target_;
  std::mt19937_64 rng_;
};

}  // namespace

std::unique_ptr<AlicePolicy> alice_random(std::uint64_t seed) { return std::make_unique<AliceRandom>(seed); }
std::unique_ptr<BobPolicy> bob_random(std::uint64_t seed) { return std::make_unique<BobRandom>(seed); }
std::unique_ptr<BobPolicy> bob_target_seeking(Point target, std::uint64_t seed) {
  return std::make_unique<BobTarget>(target, seed);
}

std::vector<Ball> candidate_grid(const GameConfig& cfg, const Ball& B, const AliceMove& alice,
                                 const std::optional<Point>& target) {
  Frame f = frame_of(cfg, B, alice);
  std::optional<Point> toward;
  if (target) toward = *target - f.container.center;
  auto dirs = grid_directions(cfg, alice, toward);
  std::vector<double> radii;
  const int levels = f.r_max > f.r_min ? 8 : 1;
  for (int k = 0; k < levels; ++k)
    radii.push_back(levels == 1 ? f.r_min : f.r_min * std::pow(f.r_max / f.r_min, double(levels - 1 - k) / (levels - 1)));
  std::vector<Ball> out;
  for (double r : radii) {
    double room = f.container.radius - r;
    out.push_back({f.container.center, r});
    if (room <= 0) continue;
    for (const auto& u : dirs)
      for (double frac : {1.0, 0.5}) out.push_back({f.container.center + frac * room * u, r});
    // The target itself, or the nearest center to it that fits.
    if (toward && norm(*toward) > 0) {
      double d = norm(*toward);
      out.push_back({f.container.center + (std::min(d, room) / d) * *toward, r});
    }
  }
  return out;
}

std::vector<Ball> sweep_for_legal(const GameConfig& cfg, const Ball& B, const AliceMove& alice,
                                  const std::vector<Point>& directions) {
  Frame f = frame_of(cfg, B, alice);
  const double r = f.r_min;
  const double D = f.container.radius - r;
  std::vector<Slab> one;
  const std::vector<Slab>* slabs = slabs_of(alice, one);
  const int N = slabs ? static_cast<int>(slabs->size()) : 0;
  const int allowed = N - (N + 1) / 2;
  std::vector<Ball> out;
  for (const auto& u : directions) {
    std::vector<std::pair<double, double>> bans;
    int always = 0;
    if (slabs)
      for (const auto& s : *slabs) {
        double p = dot(f.container.center - s.anchor, s.normal), q = dot(u, s.normal);
        double w = s.epsilon + r + 4 * kSlack * (r + s.epsilon);
        if (std::abs(q) < 1e-300) {
          if (std::abs(p) <= w) ++always;
          continue;
        }
        double lo = (-w - p) / q, hi = (w - p) / q;
        if (lo > hi) std::swap(lo, hi);
        bans.push_back({lo, hi});
      }
    std::vector<double> ev{-D, D};
    for (const auto& [lo, hi] : bans)
      for (double x : {lo, hi})
        if (x > -D && x < D) ev.push_back(x);
    std::sort(ev.begin(), ev.end());
    std::vector<double> cand{-D, D};
    for (size_t i = 0; i + 1 < ev.size(); ++i) cand.push_back(0.5 * (ev[i] + ev[i + 1]));
    for (double s : cand) {
      int hits = always;
      for (const auto& [lo, hi] : bans)
        if (lo <= s && s <= hi) ++hits;
      if (hits > allowed) continue;
      Ball c{f.container.center + s * u, r};
      if (bob_legal(cfg, B, alice, c)) out.push_back(c);
    }
  }
  return out;
}

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::point: return "point";
    case OutcomeKind::region: return "region";
    case OutcomeKind::illegal: return "illegal";
    case OutcomeKind::bob_stuck: return "bob_stuck";
    case OutcomeKind::policy_error: return "policy_error";
  }
  return "?";
}

Transcript play(AlicePolicy& alice, BobPolicy& bob, const GameConfig& config) {
  Transcript T;
  T.config = config;
  T.alice_name = alice.name();
  T.bob_name = bob.name();
  Referee ref(config);
  T.balls.push_back(config.domain);
  auto stop = [&](OutcomeKind kind, int round, std::string who, std::string msg) {
    T.outcome = {kind, T.balls.back(), round, std::move(who), std::move(msg)};
  };
  bool done = false;
  for (int i = 1; i <= config.max_rounds && !done; ++i) {
    if (T.balls.back().radius <= config.radius_floor) break;
    GameView view{&T.config, i, &T.balls};
    AliceMove am;
    try {
      am = alice.move(view);
    } catch (const std::exception& e) {
      stop(OutcomeKind::policy_error, i, "alice", e.what());
      done = true;
      break;
    }
    Verdict va;
    try {
      va = ref.alice(am);
    } catch (const WrongVariant& e) {
      va = {false, e.what()};
    }
    T.entries.push_back({i, true, am, va});
    if (!va.legal) {
      stop(OutcomeKind::illegal, i, "alice", va.reason);
      done = true;
      break;
    }
    std::optional<Ball> bm;
    try {
      bm = bob.move(view, am);
    } catch (const std::exception& e) {
      stop(OutcomeKind::policy_error, i, "bob", e.what());
      done = true;
      break;
    }
    if (!bm) {
      stop(OutcomeKind::bob_stuck, i, "bob", "no legal ball found");
      done = true;
      break;
    }
    Verdict vb = ref.bob(*bm);
    T.entries.push_back({i, false, *bm, vb});
    if (!vb.legal) {
      stop(OutcomeKind::illegal, i, "bob", vb.reason);
      done = true;
      break;
    }
    T.balls.push_back(*bm);
  }
  if (!done) {
    int last = static_cast<int>(T.balls.size());
    if (T.balls.back().radius <= config.radius_floor)
      stop(OutcomeKind::point, last, "", "");
    else
      stop(OutcomeKind::region, last, "", "");
  }
  return T;
}

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string pt(const Point& p, int d) {
  std::string s;
  for (int k = 0; k < d; ++k) {
    if (k) s += ',';
    s += num(p[k]);
  }
  return s;
}

std::string ball_str(const Ball& b, int d) { return "c=" + pt(b.center, d) + " r=" + num(b.radius); }

std::string slab_str(const Slab& s, int d) {
  return "a=" + pt(s.anchor, d) + " n=" + pt(s.normal, d) + " eps=" + num(s.epsilon);
}

}  // namespace

std::string Transcript::serialize() const {
  const int d = config.dimension;
  std::ostringstream o;
  o << "# sl2lab transcript v1\n";
  o << "# variant=" << to_string(config.variant) << " dimension=" << d << " alpha=" << num(config.alpha)
    << " beta=" << num(config.beta) << " domain=" << ball_str(config.domain, d) << " max_rounds=" << config.max_rounds
    << " radius_floor=" << num(config.radius_floor) << " seed=" << config.seed << " alice=" << alice_name
    << " bob=" << bob_name << "\n";
  o << "0 domain ball " << ball_str(config.domain, d) << "\n";
  for (const auto& e : entries) {
    o << e.round << (e.alice ? " alice " : " bob ");
    if (auto* b = std::get_if<Ball>(&e.move)) {
      o << "ball " << ball_str(*b, d);
    } else {
      const auto& am = std::get<AliceMove>(e.move);
      if (auto* ab = std::get_if<Ball>(&am)) {
        o << "ball " << ball_str(*ab, d);
      } else if (auto* s = std::get_if<Slab>(&am)) {
        o << "slab " << slab_str(*s, d);
      } else {
        const auto& v = std::get<std::vector<Slab>>(am);
        o << "slabs " << v.size();
        for (const auto& s2 : v) o << " [" << slab_str(s2, d) << "]";
      }
    }
    o << (e.verdict.legal ? " legal" : " illegal reason=\"" + e.verdict.reason + "\"") << "\n";
  }
  o << "outcome " << to_string(outcome.kind) << " round=" << outcome.round << " " << ball_str(outcome.ball, d);
  if (!outcome.offender.empty()) o << " offender=" << outcome.offender;
  if (!outcome.message.empty()) o << " message=\"" << outcome.message << "\"";
  o << "\n";
  return o.str();
}

}  // namespace sl2lab::game
