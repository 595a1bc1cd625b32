// 1-d bounded-orbit heuristic, its product-chart lift, and slab-list merging.

#include <cmath>

#include "sl2lab/errors.hpp"
#include "sl2lab/strategy.hpp"

namespace sl2lab::strategy {

using game::Ball;
using game::Point;
using game::Slab;
using game::operator*;
using game::operator+;
using game::operator-;
using std::abs;
using std::exp;
using std::log;
using std::sqrt;

namespace {

constexpr Point kAxis{1, 0, 0};

class AliceBounded1d : public game::AlicePolicy {
 public:
  explicit AliceBounded1d(QLattice y) : y_(std::move(y)) {}
  std::string name() const override { return "bounded"; }

  game::AliceMove move(const game::GameView& view) override {
    const Ball& B = view.current();
    const double beta = view.config->beta;
    const double c = B.center[0], r = B.radius;
    // Shortest vector of g_t h_c y at the time scale the ball resolves.
    const Quad t = log(1 / Quad(r)) / 2;
    const auto g = one_param(OneParam::diagonal(), t);
    const auto h = one_param(OneParam::upper(), Quad(c));
    const auto R = (g * h * y_).reduce();
    const Vec2<Quad> w = R.b1();
    // Back in h_c y: v = g_{-t} w. s* zeroes its first coordinate in h_{s*} y.
    const Quad v1 = w[0] * exp(-t), v2 = w[1] * exp(t);
    if (v2 != 0) {
      double s = num::to_double(Quad(c) - v1 / v2);
      if (std::isfinite(s)) return Slab{{s, 0, 0}, kAxis, beta * r};
    }
    return Slab{{c + 2 * r, 0, 0}, kAxis, beta * r};
  }

 private:
  QLattice y_;
};

class AliceAvoidPoint : public game::AlicePolicy {
 public:
  explicit AliceAvoidPoint(double s) : s_(s) {}
  std::string name() const override { return "avoid-point"; }
  game::AliceMove move(const game::GameView& view) override {
    return Slab{{s_, 0, 0}, kAxis, view.config->beta * view.current().radius};
  }

 private:
  double s_;
};

class AliceMerge : public game::AlicePolicy {
 public:
  AliceMerge(std::unique_ptr<game::AlicePolicy> a, std::unique_ptr<game::AlicePolicy> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return "merge(" + a_->name() + "," + b_->name() + ")"; }

  game::AliceMove move(const game::GameView& view) override {
    std::vector<Slab> out;
    for (auto* p : {a_.get(), b_.get()}) {
      auto m = p->move(view);
      if (auto* s = std::get_if<Slab>(&m)) {
        out.push_back(*s);
      } else if (auto* v = std::get_if<std::vector<Slab>>(&m)) {
        out.insert(out.end(), v->begin(), v->end());
      } else {
        throw WrongVariant("merge: a ball is not a slab move");
      }
    }
    return out;
  }

 private:
  std::unique_ptr<game::AlicePolicy> a_, b_;
};

}  // namespace

std::unique_ptr<game::AlicePolicy> alice_bounded_1d(const QLattice& y) { return std::make_unique<AliceBounded1d>(y); }

std::unique_ptr<game::AlicePolicy> alice_avoid_point_1d(double s_star) {
  return std::make_unique<AliceAvoidPoint>(s_star);
}

AliceProjectionLift::AliceProjectionLift(std::unique_ptr<game::AlicePolicy> inner) : inner_(std::move(inner)) {
  if (!inner_) throw InvalidParameter("projection lift needs an inner policy");
}

std::string AliceProjectionLift::name() const { return "lift(" + inner_->name() + ")"; }

game::AliceMove AliceProjectionLift::move(const game::GameView& view) {
  projected_.clear();
  for (const auto& b : *view.balls) projected_.push_back(Ball{{b.center[0], 0, 0}, b.radius});
  inner_cfg_ = *view.config;
  inner_cfg_.dimension = 1;
  inner_cfg_.domain = projected_.front();
  game::GameView inner{&inner_cfg_, view.round, &projected_};
  auto m = inner_->move(inner);
  auto* s = std::get_if<Slab>(&m);
  if (!s) throw WrongVariant("projection lift: inner policy must play single slabs");
  // The 1-d slab {|s - s*| <= eps} is the plane family x_0 = s* in R^3.
  return Slab{{s->anchor[0], 0, 0}, kAxis, s->epsilon};
}

std::unique_ptr<AliceProjectionLift> alice_projection_lift(std::unique_ptr<game::AlicePolicy> inner) {
  return std::make_unique<AliceProjectionLift>(std::move(inner));
}

std::unique_ptr<game::AlicePolicy> alice_merge(std::unique_ptr<game::AlicePolicy> a,
                                               std::unique_ptr<game::AlicePolicy> b) {
  if (!a || !b) throw InvalidParameter("merge needs two policies");
  return std::make_unique<AliceMerge>(std::move(a), std::move(b));
}

QLattice product_chart_point(const QLattice& y, const Point& x) {
  auto p = QAlgebraVector::from_orthonormal({Quad(0), Quad(x[1]), Quad(x[2])});
  return exp_alg(p) * (one_param(OneParam::upper(), Quad(x[0])) * y);
}

}  // namespace sl2lab::strategy
