#include "sl2lab/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sl2lab/errors.hpp"

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

QAlgebraVector to_algebra(const Point& x) {
  return QAlgebraVector::from_orthonormal({Quad(x[0]), Quad(x[1]), Quad(x[2])});
}

Point to_point(const QAlgebraVector& X) {
  auto o = X.orthonormal();
  return {num::to_double(o[0]), num::to_double(o[1]), num::to_double(o[2])};
}

int n_of_m(int m) {
  if (m < 1) throw InvalidParameter("m must be positive");
  int n = 0;
  while ((1 << (n + 1)) <= m) ++n;
  return n + 1;
}

int smallest_m(double beta, double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) throw InvalidParameter("tau must be positive");
  if (!(beta > 0 && beta < std::exp(-2 * tau))) throw InvalidParameter("beta must lie in (0, e^{-2 tau})");
  for (int m = 1; m < 1000000; ++m) {
    int n = n_of_m(m);
    if (-n * std::log(beta) < 2 * m * tau) return m;
  }
  throw ResourceLimit("no m below 1e6 satisfies beta^-n < e^{2 m tau}");
}

AvoidanceConstants constants_from(double c, double sigma1, double sigma2_b, double beta, double tau, double r0) {
  if (!(r0 > 0)) throw InvalidParameter("r0 must be positive");
  if (!(c > 1e-6)) throw NotTransversal("Z is not transversal to the upper horocycle direction (c <= 1e-6)");
  AvoidanceConstants k;
  k.beta = beta;
  k.tau = tau;
  k.m = smallest_m(beta, tau);
  k.n = n_of_m(k.m);
  k.c = c;
  k.sigma1 = sigma1;
  k.sigma2_b = sigma2_b;
  double e2m = std::exp(2 * k.m * tau);
  k.b = c * std::pow(beta, k.n + 2) / e2m / 16;
  k.sigma = std::min(sigma2_b / 4, e2m * r0);
  k.delta = k.sigma / e2m;
  k.epsilon = k.b * k.sigma;
  k.r0 = r0;
  return k;
}

AvoidanceConstants derive_constants(const ZLike& Z, double beta, double tau, double r0) {
  smallest_m(beta, tau);
  double c = num::to_double(transversality_constant(Z, Horo::upper));
  if (!(c > 1e-6)) throw NotTransversal("Z is not transversal to the upper horocycle direction (c <= 1e-6)");
  const auto& params = Z.sample_params();
  std::vector<QLattice> bases;
  size_t stride = std::max<size_t>(1, params.size() / 16);
  for (size_t i = 0; i < params.size(); i += stride) bases.push_back(Z.at(params[i].u, params[i].t));
  Quad s1 = bilipschitz_radius(bases);
  // b only depends on c, beta, tau; sigma2 needs it before sigma is known.
  auto pre = constants_from(c, num::to_double(s1), num::to_double(s1), beta, tau, r0);
  Quad s2 = sigma2_estimate(Z, Quad(pre.b), s1);
  return constants_from(c, num::to_double(s1), num::to_double(s2), beta, tau, r0);
}

double natural_r0(const AvoidanceConstants& k) { return k.sigma2_b / 4 / std::exp(2 * k.m * k.tau); }

std::vector<std::string> constant_violations(const AvoidanceConstants& k) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const char* what) {
    if (!ok) out.emplace_back(what);
  };
  double e2m = std::exp(2 * k.m * k.tau);
  need(k.beta > 0 && k.beta < std::exp(-2 * k.tau), "beta < e^{-2 tau}");
  need(k.n == n_of_m(k.m), "n = floor(log2 m) + 1");
  need(std::ldexp(double(k.m), -k.n) < 1, "2^-n m < 1");
  need(std::pow(k.beta, -k.n) < e2m, "beta^-n < e^{2 m tau}");
  need(k.c > 0 && k.c <= 1, "0 < c <= 1");
  need(4 * k.sigma1 <= 0.5 * (1 + 1e-12), "4 sigma1 <= 1/2");
  need(k.sigma2_b <= k.sigma1 * (1 + 1e-12), "sigma2 <= sigma1");
  need(k.sigma <= k.sigma2_b / 4 * (1 + 1e-12), "sigma <= sigma2 / 4");
  need(std::abs(k.delta * e2m - k.sigma) <= 1e-12 * k.sigma, "delta = e^{-2 m tau} sigma");
  need(k.delta <= k.r0 * (1 + 1e-12), "delta <= r0");
  need(std::abs(k.epsilon - k.b * k.sigma) <= 1e-12 * k.epsilon, "epsilon = b sigma");
  need(2 * k.epsilon + 2 * k.b * k.sigma <= k.c * std::pow(k.beta, k.n + 2) / e2m * k.sigma / 4 * (1 + 1e-12),
       "2 epsilon + 2 b sigma <= c beta^{n+2} e^{-2 m tau} sigma / 4");
  return out;
}

int window_of(long k, const AvoidanceConstants& c) {
  if (k < 0) throw InvalidParameter("k must be nonnegative");
  const double L = c.n * std::log(1 / c.beta);
  int j = static_cast<int>(std::floor(2 * k * c.tau / L)) + 1;
  // Snap against round-off at the window edges.
  while (j > 1 && 2 * k * c.tau < (j - 1) * L) --j;
  while (2 * k * c.tau >= j * L) ++j;
  return j;
}

std::pair<long, long> window_range(int j, const AvoidanceConstants& c) {
  if (j < 1) throw InvalidParameter("windows start at 1");
  const double L = c.n * std::log(1 / c.beta);
  long lo = static_cast<long>(std::ceil((j - 1) * L / (2 * c.tau)));
  long hi = static_cast<long>(std::ceil(j * L / (2 * c.tau))) - 1;
  while (lo > 0 && window_of(lo - 1, c) == j) --lo;
  while (window_of(lo, c) < j) ++lo;
  while (window_of(hi + 1, c) == j) ++hi;
  while (hi >= lo && window_of(hi, c) > j) --hi;
  return {lo, hi};
}

int stage_of(double r, double r1, const AvoidanceConstants& c) {
  if (!(r > 0) || r > r1 * (1 + 1e-12)) throw InvalidParameter("stage_of needs 0 < r <= r1");
  const double L = c.n * std::log(1 / c.beta);
  int j = static_cast<int>(std::floor(std::log(r1 / r) / L)) + 1;
  auto upper = [&](int jj) { return std::pow(c.beta, c.n * (jj - 1)) * r1; };
  while (j > 1 && r > upper(j)) --j;
  while (r <= upper(j + 1)) ++j;
  return j;
}

int DiameterChain::first_broken() const {
  for (size_t i = 0; i + 1 < links.size(); ++i)
    if (links[i] > links[i + 1] * (1 + 1e-9)) return static_cast<int>(i);
  return -1;
}

DiameterChain diameter_chain(int j, long k, double r_i, double r1, const AvoidanceConstants& c) {
  double e2k = std::exp(2 * k * c.tau);
  DiameterChain d;
  d.links = {2 * e2k * r_i,
             2 * e2k * std::pow(c.beta, c.n * (j - 1)) * r1,
             2 * std::pow(c.beta, -c.n) * r1,
             2 * std::exp(2 * c.m * c.tau) * r1,
             2 * c.sigma,
             c.sigma2_b / 2};
  return d;
}

AliceDummy::AliceDummy(double goal, std::unique_ptr<game::AlicePolicy> wrapped)
    : goal_(goal), wrapped_(std::move(wrapped)) {
  if (!(goal > 0)) throw InvalidParameter("dummy goal radius must be positive");
}

std::string AliceDummy::name() const { return wrapped_ ? "dummy+" + wrapped_->name() : "dummy"; }

game::AliceMove AliceDummy::move(const game::GameView& view) {
  const Ball& B = view.current();
  if (start_round_ == 0 && wrapped_ && B.radius <= goal_) start_round_ = view.round;
  if (start_round_ == 0) {
    const auto& cfg = *view.config;
    switch (cfg.variant) {
      case game::Variant::classic:
        return Ball{B.center, cfg.alpha * B.radius};
      case game::Variant::haw: {
        Point e{1, 0, 0};
        return Slab{B.center + (2 * B.radius) * e, e, cfg.beta * B.radius / 2};
      }
      case game::Variant::hpw:
        break;
    }
    return std::vector<Slab>{};
  }
  tail_.assign(view.balls->begin() + (start_round_ - 1), view.balls->end());
  game::GameView inner{view.config, view.round - start_round_ + 1, &tail_};
  return wrapped_->move(inner);
}

std::unique_ptr<AliceDummy> alice_dummy(double goal, std::unique_ptr<game::AlicePolicy> wrapped) {
  return std::make_unique<AliceDummy>(goal, std::move(wrapped));
}

}  // namespace sl2lab::strategy
