// The windowed Z-avoidance policy, its outcome check, and seeded setups for it.

#include <algorithm>
#include <cmath>
#include <random>

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

using Vec3 = std::array<Quad, 3>;

Quad dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Quad norm3(const Vec3& a) { return sqrt(dot3(a, a)); }

QGroupElement flow(const Quad& t) { return one_param(OneParam::diagonal(), t); }

// Upper bound on the coarse-search error: one sample step at the fastest sampled speed.
double coarse_margin_for(const ZLike& Z) {
  Quad speed_u = 0, speed_t = 0;
  for (const auto& p : Z.sample_params()) {
    auto T = Z.tangents(p.u, p.t);
    if (!T.empty()) speed_u = std::max(speed_u, T[0].norm());
    if (T.size() > 1) speed_t = std::max(speed_t, T[1].norm());
  }
  Quad t_step = (Z.t_max() - Z.t_min()) / 8;
  return num::to_double(speed_u * Z.u_step() + speed_t * t_step) * 1.5 + 1e-9;
}

// x' = log(exp(c + w) exp(-c)): the exp-chart at exp(c) y seen from the one at y.
QAlgebraVector shifted(const QAlgebraVector& c, const QAlgebraVector& w) {
  return log_alg(exp_alg(c + w) * exp_alg(-c));
}

const std::vector<Vec3>& sphere_directions() {
  static const std::vector<Vec3> dirs = [] {
    std::vector<Vec3> out;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          Vec3 v{Quad(a), Quad(b), Quad(c)};
          Quad n = norm3(v);
          out.push_back({v[0] / n, v[1] / n, v[2] / n});
        }
    return out;
  }();
  return dirs;
}

// Linearization of w -> shifted(c, w) on B(0, r): Jacobian columns (orthonormal coordinates)
// and the quadratic remainder at sampled points of the sphere.
struct ShiftModel {
  std::array<Vec3, 3> J;  // J[i] = image of the i-th unit vector
  std::vector<Vec3> remainder;

  Vec3 transpose_apply(const Vec3& n) const { return {dot3(J[0], n), dot3(J[1], n), dot3(J[2], n)}; }
};

ShiftModel shift_model(const QAlgebraVector& c, const Quad& r) {
  ShiftModel m;
  Quad h = r * Quad("1e-3");
  for (int i = 0; i < 3; ++i) {
    Vec3 e{0, 0, 0};
    e[i] = h;
    auto p = shifted(c, QAlgebraVector::from_orthonormal(e)).orthonormal();
    e[i] = -h;
    auto q = shifted(c, QAlgebraVector::from_orthonormal(e)).orthonormal();
    for (int k = 0; k < 3; ++k) m.J[i][k] = (p[k] - q[k]) / (2 * h);
  }
  for (const auto& d : sphere_directions()) {
    Vec3 w{d[0] * r, d[1] * r, d[2] * r};
    auto img = shifted(c, QAlgebraVector::from_orthonormal(w)).orthonormal();
    Vec3 lin{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) lin[k] += m.J[i][k] * w[i];
    m.remainder.push_back({img[0] - lin[0], img[1] - lin[1], img[2] - lin[2]});
  }
  return m;
}

struct LocalSlab {
  Vec3 normal;  // unit, x' coordinates
  Quad offset;  // <x', normal> at the slab's middle
  Quad need;    // half-width in x' coordinates
};

// Slab in x' coordinates covering {x' : Ad_k x' within eps_eff of phi_xk(Z)} near one hit,
// restricted to the part of Z within R + eps_eff of xk.
std::optional<LocalSlab> local_slab(const ZLike& Z, const QLattice& xk, const NearestPoint& hit, const Quad& e2k,
                                    const Quad& R, const Quad& eps_eff) {
  const auto BxG = xk.basis() * int_to_group<Quad>(hit.gamma);
  const auto seed_inv = Z.seed().inverse();
  auto zeta = [&](const Quad& u, const Quad& t) -> std::optional<Vec3> {
    auto M = BxG * seed_inv * Z.element(u, t).inverse();
    if (!(M.distance_to_identity() <= Quad(0.5))) return std::nullopt;
    return (-log_alg(M)).orthonormal();
  };
  const bool vary_u = Z.u_max() > Z.u_min();
  const bool vary_t = Z.t_max() > Z.t_min();
  const Quad u0 = hit.param.u, t0 = hit.param.t;

  // Tangents of phi_xk(Z) at the hit and the unit normal nu: E minus its tangential part.
  std::vector<Vec3> basis;
  std::vector<Quad> speeds;
  const Quad h("1e-12");
  auto add_tangent = [&](const std::optional<Vec3>& p, const std::optional<Vec3>& m) {
    if (!p || !m) return false;
    Vec3 d{((*p)[0] - (*m)[0]) / (2 * h), ((*p)[1] - (*m)[1]) / (2 * h), ((*p)[2] - (*m)[2]) / (2 * h)};
    speeds.push_back(norm3(d));
    for (const auto& b : basis) {
      Quad s = dot3(d, b);
      for (int i = 0; i < 3; ++i) d[i] -= s * b[i];
    }
    Quad n = norm3(d);
    if (n > Quad("1e-20")) basis.push_back({d[0] / n, d[1] / n, d[2] / n});
    return true;
  };
  if (vary_u && !add_tangent(zeta(u0 + h, t0), zeta(u0 - h, t0))) return std::nullopt;
  if (vary_t && !add_tangent(zeta(u0, t0 + h), zeta(u0, t0 - h))) return std::nullopt;
  Vec3 nu{1, 0, 0};
  for (const auto& b : basis) {
    Quad s = dot3(nu, b);
    for (int i = 0; i < 3; ++i) nu[i] -= s * b[i];
  }
  Quad theta = norm3(nu);
  if (!(theta > Quad("1e-12"))) return std::nullopt;
  for (auto& x : nu) x /= theta;

  // Spread of <zeta, nu> over the relevant part of Z, from a grid that is widened until its
  // edges are irrelevant and refined until the interpolation error is small.
  const Quad reach = R + eps_eff;
  auto relevant = [&](const std::optional<Vec3>& z) { return z && norm3(*z) <= reach; };
  Quad Wu = vary_u ? Quad(2.5) * reach / std::max(speeds[0], Quad("1e-30")) : Quad(0);
  Quad Wt = vary_t ? Quad(2.5) * reach / std::max(speeds.back(), Quad("1e-30")) : Quad(0);
  auto in_u = [&](const Quad& u) { return Z.period() || (u >= Z.u_min() && u <= Z.u_max()); };
  auto in_t = [&](const Quad& t) { return t >= Z.t_min() && t <= Z.t_max(); };

  int N = 33;
  Quad fmin = 0, fmax = 0, interp = 0;
  for (int widen = 0;; ++widen) {
    if (widen > 40) return std::nullopt;
    const int Nu = vary_u ? N : 1, Nt = vary_t ? N : 1;
    std::vector<std::optional<Vec3>> z(static_cast<size_t>(Nu) * Nt);
    std::vector<Quad> f(z.size());
    std::vector<char> ok(z.size(), 0), rel(z.size(), 0);
    auto idx = [&](int a, int b) { return static_cast<size_t>(a) * Nt + b; };
    auto pu = [&](int a) { return Nu == 1 ? u0 : u0 - Wu + 2 * Wu * a / (Nu - 1); };
    auto pt = [&](int b) { return Nt == 1 ? t0 : t0 - Wt + 2 * Wt * b / (Nt - 1); };
    bool edge_relevant = false;
    for (int a = 0; a < Nu; ++a)
      for (int b = 0; b < Nt; ++b) {
        Quad u = pu(a), t = pt(b);
        if (!in_u(u) || !in_t(t)) continue;
        auto zz = zeta(u, t);
        size_t i = idx(a, b);
        z[i] = zz;
        if (zz) {
          ok[i] = 1;
          f[i] = dot3(*zz, nu);
        }
        rel[i] = relevant(zz);
        bool edge = (vary_u && (a == 0 || a == Nu - 1)) || (vary_t && (b == 0 || b == Nt - 1));
        if (edge && rel[i]) edge_relevant = true;
        // A chart failure inside the window means the window is too wide for this chart.
        if (!zz && !edge) return std::nullopt;
      }
    if (edge_relevant) {
      Wu *= 2;
      Wt *= 2;
      continue;
    }
    // Relevant samples and their grid neighbors bound the spread; second differences bound
    // what linear interpolation between samples can miss.
    bool any = false;
    Quad lo = 0, hi = 0, d2max = 0;
    auto take = [&](size_t i) {
      if (!ok[i]) return;
      if (!any) lo = hi = f[i];
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
      any = true;
    };
    for (int a = 0; a < Nu; ++a)
      for (int b = 0; b < Nt; ++b) {
        if (!rel[idx(a, b)]) continue;
        for (int da = -1; da <= 1; ++da)
          for (int db = -1; db <= 1; ++db) {
            int aa = a + da, bb = b + db;
            if (aa >= 0 && aa < Nu && bb >= 0 && bb < Nt) take(idx(aa, bb));
          }
        if (vary_u && a > 0 && a + 1 < Nu && ok[idx(a - 1, b)] && ok[idx(a + 1, b)])
          d2max = std::max(d2max, abs(f[idx(a + 1, b)] - 2 * f[idx(a, b)] + f[idx(a - 1, b)]));
        if (vary_t && b > 0 && b + 1 < Nt && ok[idx(a, b - 1)] && ok[idx(a, b + 1)])
          d2max = std::max(d2max, abs(f[idx(a, b + 1)] - 2 * f[idx(a, b)] + f[idx(a, b - 1)]));
      }
    // The hit itself is relevant even if the grid straddles it.
    if (auto zh = zeta(u0, t0)) {
      Quad fh = dot3(*zh, nu);
      if (!any) lo = hi = fh;
      lo = std::min(lo, fh);
      hi = std::max(hi, fh);
    }
    Quad margin = d2max / 4;  // twice the h^2 f''/8 interpolation bound, per direction
    if (vary_u && vary_t) margin *= 2;
    const int cap = (vary_u && vary_t) ? 257 : 4097;
    if (margin > eps_eff / 50 && N < cap) {
      N = 2 * N - 1;
      continue;
    }
    fmin = lo;
    fmax = hi;
    interp = margin;
    break;
  }

  // Pull back through Ad(g_{k tau}) = diag(e^{2k tau}, e^{-2k tau}, 1).
  Vec3 adnu{e2k * nu[0], nu[1] / e2k, nu[2]};
  Quad s = norm3(adnu);
  LocalSlab L;
  L.normal = {adnu[0] / s, adnu[1] / s, adnu[2] / s};
  L.offset = (fmin + fmax) / 2 / s;
  L.need = ((fmax - fmin) / 2 + interp + eps_eff) / s;
  return L;
}

}  // namespace

AliceHpwAvoid::AliceHpwAvoid(const ZLike& Z, Chart chart, AvoidanceConstants consts)
    : Z_(&Z), chart_(std::move(chart)), k_(consts), finder_(Z), coarse_margin_(coarse_margin_for(Z)) {
  auto bad = constant_violations(k_);
  if (!bad.empty()) throw ConfigurationError("avoidance constants violate: " + bad.front());
}

void AliceHpwAvoid::open_stage(int j, const Ball& B) {
  stats_.stage = j;
  stage_r_ = B.radius;
  active_.clear();
  const double beps = std::pow(k_.beta, k_.n) * B.radius;
  const auto c = to_algebra(B.center);
  const Quad r(B.radius);
  const QLattice yc = exp_alg(c) * chart_.base();
  const ShiftModel model = shift_model(c, r);
  const Quad cnorm = c.norm();
  const Quad eps_eff = 2 * Quad(k_.epsilon);

  auto [lo, hi] = window_range(j, k_);
  for (long k = lo; k <= hi; ++k) {
    if (diameter_chain(j, k, B.radius, stats_.r1, k_).first_broken() >= 0) ++stats_.chain_violations;
    const Quad t = Quad(k) * Quad(k_.tau);
    const Quad e2k = exp(2 * t);
    const QLattice xk = flow(t) * yc;
    const Quad R = e2k * r * Quad(1.01) * (1 + 2 * cnorm);
    auto hits = finder_.find_all(xk, num::to_double(R + eps_eff) + coarse_margin_);
    for (const auto& hit : hits) {
      if (hit.dist > R + eps_eff) continue;
      ++stats_.relevant;
      auto L = local_slab(*Z_, xk, hit, e2k, R, eps_eff);
      AvoidSlab s;
      s.stage = j;
      s.k = k;
      s.r_i = B.radius;
      if (!L) {
        // No usable local picture: forbid nothing and record the failure.
        ++stats_.need_violations;
        continue;
      }
      // x' = J w + q(w) with w = x - c; pull the x'-slab back to game coordinates.
      Vec3 p = model.transpose_apply(L->normal);
      Quad sp = norm3(p);
      Quad qmax = 0;
      for (const auto& q : model.remainder) qmax = std::max(qmax, abs(dot3(q, L->normal)));
      Quad need = (L->need + 2 * qmax) / sp;
      Point n{num::to_double(p[0] / sp), num::to_double(p[1] / sp), num::to_double(p[2] / sp)};
      double nn = game::norm(n);
      n = (1 / nn) * n;
      Point anchor = B.center + num::to_double(L->offset / sp) * n;
      // Rounding of anchor and normal in double.
      double ulp = 4e-16 * (game::norm(B.center) + B.radius);
      s.need = num::to_double(need) + ulp;
      s.slab = Slab{anchor, n, beps};
      stats_.max_need_ratio = std::max(stats_.max_need_ratio, s.need / beps);
      if (s.need > beps) {
        ++stats_.need_violations;
        s.slab.epsilon = std::min(s.need, k_.beta * B.radius);
      }
      active_.push_back(s);
    }
  }
}

void AliceHpwAvoid::close_stage(const Ball& B) {
  for (const auto& s : active_) {
    Slab danger = s.slab;
    danger.epsilon = s.need;
    if (game::meets(B, danger)) ++stats_.endgame_violations;
  }
  ++stats_.stages_closed;
  stats_.slabs_per_stage.push_back(static_cast<int>(active_.size()));
  stats_.slabs.insert(stats_.slabs.end(), active_.begin(), active_.end());
  active_.clear();
}

game::AliceMove AliceHpwAvoid::move(const game::GameView& view) {
  const Ball& B = view.current();
  if (!started_) {
    if (B.radius > k_.delta) return std::vector<Slab>{};
    if (game::norm(B.center) + B.radius > num::to_double(chart_.radius()))
      throw ConfigurationError("avoid: the ball B_1 leaves the chart");
    started_ = true;
    stats_.r1 = B.radius;
    stats_.first_round = view.round;
    open_stage(1, B);
  } else {
    int j = stage_of(B.radius, stats_.r1, k_);
    if (j != stats_.stage) {
      close_stage(B);
      open_stage(j, B);
    }
  }
  const double eps = std::min(std::pow(k_.beta, k_.n) * stage_r_, k_.beta * B.radius);
  std::vector<Slab> out;
  for (const auto& s : active_) {
    Slab sl = s.slab;
    sl.epsilon = std::max(std::min(eps, sl.epsilon), std::min(s.need, k_.beta * B.radius));
    if (!game::meets(B, sl)) continue;
    if (sl.epsilon < s.need) ++stats_.need_violations;
    out.push_back(sl);
  }
  return out;
}

void AliceHpwAvoid::observe_final(const Ball& last) {
  if (!started_) return;
  if (stage_of(last.radius, stats_.r1, k_) != stats_.stage) close_stage(last);
}

std::unique_ptr<AliceHpwAvoid> alice_hpw_avoid(const ZLike& Z, const Chart& chart, const AvoidanceConstants& consts) {
  return std::make_unique<AliceHpwAvoid>(Z, chart, consts);
}

AvoidCheck verify_avoidance(const ZLike& Z, const QLattice& y, const Point& x, int stages,
                            const AvoidanceConstants& c) {
  NearestPointFinder finder(Z);
  const double margin = coarse_margin_for(Z);
  const QLattice xl = exp_alg(to_algebra(x)) * y;
  AvoidCheck out;
  out.min_ratio = 1e6;
  for (int j = 1; j <= stages; ++j) {
    auto [lo, hi] = window_range(j, c);
    for (long k = lo; k <= hi; ++k) {
      ++out.checked;
      auto hits = finder.find_all(flow(Quad(k) * Quad(c.tau)) * xl, 0.45);
      for (const auto& h : hits) {
        double ratio = std::min(1e6, num::to_double(h.dist) / c.epsilon);
        if (ratio < out.min_ratio) {
          out.min_ratio = ratio;
          out.worst_k = k;
        }
      }
    }
  }
  out.ok = out.min_ratio > 1;
  return out;
}

AvoidScenario make_avoid_base(AvoidTarget kind, double a, double beta, double tau, int stages) {
  if (stages < 1) throw InvalidParameter("stages must be positive");
  AvoidScenario s;
  s.stages = stages;
  if (kind == AvoidTarget::point) {
    auto z = exp_alg(QAlgebraVector(Quad("0.1"), Quad("-0.2"), Quad("0.15"))) * QLattice::standard();
    s.Z = std::make_shared<CurveZ>(CurveZ::point(z));
  } else {
    auto full = make_Zv(a, 1).front();
    Quad period = full.u_max() - full.u_min();
    Quad mid = (full.u_min() + full.u_max()) / 2;
    Quad half = std::min(Quad("0.5"), period / 4);
    s.Z = std::make_shared<CurveZ>(full.arc(mid - half, mid + half, 64));
  }
  auto pre = derive_constants(*s.Z, beta, tau, 1.0);
  double r0 = natural_r0(pre) * (1 - 1e-9);
  s.consts = constants_from(pre.c, pre.sigma1, pre.sigma2_b, beta, tau, r0);
  s.config.variant = game::Variant::hpw;
  s.config.beta = beta;
  s.config.dimension = 3;
  s.config.domain = {{0, 0, 0}, r0};
  s.config.max_rounds = 400 * stages;
  s.config.radius_floor = std::pow(beta, s.consts.n * stages) * r0 * (1 - 1e-9);
  return s;
}

AvoidScenario instantiate(const AvoidScenario& base, std::uint64_t seed) {
  AvoidScenario s = base;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5CE4u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(-1, 1);
  Point x;
  do x = {U(rng), U(rng), U(rng)};
  while (game::norm(x) > 1);
  s.target = (0.5 * base.config.domain.radius) * x;
  std::vector<long> ks;
  for (int j = 1; j <= base.stages; ++j) {
    auto [lo, hi] = window_range(j, base.consts);
    for (long k = lo; k <= hi; ++k) ks.push_back(k);
  }
  s.k0 = ks[std::uniform_int_distribution<size_t>(0, ks.size() - 1)(rng)];
  const ZLike& Z = *base.Z;
  Quad u = Z.u_min();
  if (Z.u_max() > Z.u_min()) {
    double w = std::uniform_real_distribution<double>(0.25, 0.75)(rng);
    u = Z.u_min() + (Z.u_max() - Z.u_min()) * Quad(w);
  }
  QLattice z = Z.at(u);
  s.y = exp_alg(-to_algebra(s.target)) * (flow(-Quad(s.k0) * Quad(base.consts.tau)) * z);
  s.config.seed = seed;
  return s;
}

}  // namespace sl2lab::strategy
