#include "sl2lab/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace sl2lab {

namespace {

const Quad kSqrt2 = sqrt(Quad(2));

QAlgebraVector fd_right_tangent(const std::function<QGroupElement(const Quad&)>& f, const Quad& u, const Quad& h) {
  auto X = log_alg(f(u + h) * f(u - h).inverse());
  return X * (Quad(1) / (2 * h));
}

// Uniform point in the algebra ball of radius r (orthonormal coordinates).
QAlgebraVector random_in_ball(std::mt19937_64& rng, double r) {
  std::normal_distribution<double> N(0, 1);
  std::uniform_real_distribution<double> U(0, 1);
  double x = N(rng), y = N(rng), z = N(rng);
  double n = std::sqrt(x * x + y * y + z * z);
  if (n == 0) return {};
  double s = r * std::cbrt(U(rng)) / n;
  return QAlgebraVector::from_orthonormal({Quad(x * s), Quad(y * s), Quad(z * s)});
}

}  // namespace

QAlgebraVector horo_direction(Horo H) { return H == Horo::upper ? QAlgebraVector::E() : QAlgebraVector::F(); }

Chart::Chart(QLattice base, Quad radius) : base_(std::move(base)), radius_(radius) {
  if (!(radius > 0) || radius > Quad(0.5)) throw InvalidParameter("chart radius must lie in (0, 0.5]");
}

QLattice chart_apply(const Chart& c, const QAlgebraVector& X) {
  if (X.norm() > c.radius() * (1 + Quad(1e-12))) throw OutOfDomain("chart_apply: point outside the chart domain");
  return exp_alg(X) * c.base();
}

QAlgebraVector chart_invert(const Chart& c, const QLattice& x) {
  auto r = local_log(x.basis(), c.base().basis());
  if (!r || r->dist > c.radius() * (1 + Quad(1e-12))) throw OutOfDomain("chart_invert: lattice outside the chart image");
  return r->X;
}

bool chart_bilipschitz_ok(const QLattice& base, const Quad& radius, int pairs, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  auto y = base.cast<double>();
  double r = num::to_double(radius);
  for (int i = 0; i < pairs; ++i) {
    auto X = random_in_ball(rng, r).cast<double>();
    auto Y = random_in_ball(rng, r).cast<double>();
    double nrm = (X - Y).norm();
    if (nrm < 1e-12) continue;
    auto d = dist_X(exp_alg(X) * y, exp_alg(Y) * y);
    if (!d) {
      // farther than 0.5 apart: only the upper bound could fail
      if (nrm < 0.25) return false;
      continue;
    }
    double ratio = *d / nrm;
    if (ratio < 0.5 || ratio > 2.0) return false;
  }
  return true;
}

Quad bilipschitz_radius(const std::vector<QLattice>& bases, const Quad& start, int pairs) {
  Quad s = start;
  for (int k = 0; k < 80; ++k, s /= 2) {
    bool ok = true;
    for (size_t i = 0; i < bases.size() && ok; ++i) ok = chart_bilipschitz_ok(bases[i], 4 * s, pairs, 1000 + i);
    if (ok) return s;
  }
  return s;
}

Quad ZLike::u_step() const { return n_u_ > 0 ? (u_max_ - u_min_) / n_u_ : Quad(0); }

CurveZ::CurveZ(Path path, QGroupElement seed, Quad u0, Quad u1, int n, std::optional<Quad> period, Tangent tangent)
    : path_(std::move(path)), tangent_fn_(std::move(tangent)) {
  if (n < 1) throw InvalidParameter("CurveZ: need at least one sample interval");
  if (!(u1 > u0)) throw InvalidParameter("CurveZ: empty parameter range");
  seed_ = seed;
  u_min_ = u0;
  u_max_ = u1;
  n_u_ = n;
  period_ = period;
  samples_.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    Quad u = u0 + (u1 - u0) * i / n;
    samples_.push_back({u, QLattice(path_(u) * seed_), this->tangent(u)});
    params_.push_back({u, 0});
  }
}

CurveZ CurveZ::point(const QLattice& x) {
  CurveZ z([](const Quad&) { return QGroupElement(); }, x.basis(), 0, 1, 1);
  z.degenerate_ = true;
  z.u_max_ = 0;
  z.n_u_ = 0;
  z.samples_.resize(1);
  z.samples_[0].tangent = {};
  z.params_.resize(1);
  return z;
}

CurveZ CurveZ::orbit(const QAlgebraVector& X, const QLattice& base, Quad u0, Quad u1, int n) {
  return CurveZ([X](const Quad& u) { return exp_alg(X * u); }, base.basis(), u0, u1, n, std::nullopt,
                [X](const Quad&) { return X; });
}

QGroupElement CurveZ::element(const Quad& u, const Quad&) const { return path_(u); }

QAlgebraVector CurveZ::tangent(const Quad& u) const {
  if (degenerate_) return {};
  if (tangent_fn_) return tangent_fn_(u);
  return fd_right_tangent(path_, u, Quad(1e-9));
}

std::vector<QAlgebraVector> CurveZ::tangents(const Quad& u, const Quad&) const {
  if (degenerate_) return {};
  return {tangent(u)};
}

CurveZ CurveZ::arc(const Quad& u0, const Quad& u1, int n) const {
  return CurveZ(path_, seed_, u0, u1, n, std::nullopt, tangent_fn_);
}

ThickenedZ::ThickenedZ(CurveZ source, Quad tau, int n_t) : source_(std::move(source)), tau_(tau) {
  if (!(tau >= 0)) throw InvalidParameter("thickening width must be nonnegative");
  if (n_t < 1) throw InvalidParameter("ThickenedZ: need at least one t interval");
  seed_ = source_.seed();
  u_min_ = source_.u_min();
  u_max_ = source_.u_max();
  n_u_ = static_cast<int>(source_.samples().size()) - 1;
  period_ = source_.period();
  int nt = tau > 0 ? n_t : 0;
  for (const auto& p : source_.sample_params())
    for (int j = 0; j <= nt; ++j) params_.push_back({p.u, nt ? -tau + 2 * tau * j / nt : Quad(0)});
}

int ThickenedZ::dim() const { return source_.dim() + (tau_ > 0 ? 1 : 0); }

QGroupElement ThickenedZ::element(const Quad& u, const Quad& t) const {
  return one_param(OneParam::diagonal(), t) * source_.element(u, 0);
}

std::vector<QAlgebraVector> ThickenedZ::tangents(const Quad& u, const Quad& t) const {
  std::vector<QAlgebraVector> out;
  if (!source_.degenerate()) out.push_back(adjoint_diagonal(t, source_.tangent(u)));
  if (tau_ > 0) out.push_back(QAlgebraVector::H());
  return out;
}

QGroupElement seed_basis_containing(const Vec2<Quad>& v) {
  Quad n2 = v[0] * v[0] + v[1] * v[1];
  if (!(n2 > 0)) throw InvalidParameter("seed_basis_containing: zero vector");
  return QGroupElement::unchecked(v[0], -v[1] / n2, v[1], v[0] / n2);
}

std::optional<Quad> detect_period(const CurveZ::Path& path, const QGroupElement& seed, const Quad& s_max,
                                  const Quad& ds) {
  auto z0d = QLattice(seed).cast<double>();
  auto z0 = QLattice(seed);
  auto coarse = [&](const Quad& s) {
    auto d = dist_X(QLattice(path(s) * seed).cast<double>(), z0d);
    return d ? *d : 1.0;
  };
  auto fine = [&](const Quad& s) {
    auto d = dist_X(QLattice(path(s) * seed), z0);
    return d ? *d : Quad(1);
  };
  bool left = false;
  for (Quad s = ds; s <= s_max; s += ds) {
    double d = coarse(s);
    if (!left) {
      left = d > 0.1;
      continue;
    }
    if (d >= 0.05) continue;
    // golden-section minimum of the return distance near s
    Quad lo = s - ds, hi = s + Quad(0.1);
    const Quad gr = (sqrt(Quad(5)) - 1) / 2;
    Quad a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    Quad fa = fine(a), fb = fine(b);
    for (int it = 0; it < 200 && hi - lo > Quad(1e-30); ++it) {
      if (fa < fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - gr * (hi - lo);
        fa = fine(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + gr * (hi - lo);
        fb = fine(b);
      }
    }
    Quad p = (lo + hi) / 2;
    if (fine(p) <= Quad(1e-6)) return p;
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<CurveZ> make_Zv(double a, int n_max, int n_samples) {
  if (n_max < 1) throw InvalidParameter("make_Zv: n_max must be positive");
  auto k = OneParam::stabilizer(a);
  auto v = v_of_a(Quad(a));
  std::vector<CurveZ> out;
  for (int n = 1; n <= n_max; ++n) {
    Vec2<Quad> vn{v[0] / n, v[1] / n};
    auto seed = seed_basis_containing(vn);
    CurveZ::Path path = [k](const Quad& s) { return one_param(k, s); };
    auto period = detect_period(path, seed, Quad(4) * (std::abs(a) + 1), Quad(1e-2));
    if (!period) throw ConfigurationError("make_Zv: no return of the V-orbit detected");
    auto N = generator<Quad>(k);
    out.emplace_back(path, seed, Quad(0), *period, n_samples, period, [N](const Quad&) { return N; });
  }
  return out;
}

Quad tangent_consistency(const CurveZ& Z) {
  Quad worst = 0;
  const auto& s = Z.samples();
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    Quad du = s[i + 1].u - s[i].u;
    auto pred = exp_alg(s[i].tangent * du) * s[i].z;
    auto d = dist_X(s[i + 1].z, pred);
    if (!d) return num::infinity<Quad>();
    worst = std::max(worst, Quad(*d / (du * du)));
  }
  return worst;
}

Quad dist_to_span(const QAlgebraVector& v, const std::vector<QAlgebraVector>& basis) {
  std::vector<QAlgebraVector> q;
  for (auto b : basis) {
    for (const auto& e : q) b = b - e * b.dot(e);
    Quad n = b.norm();
    if (n > Quad(1e-30)) q.push_back(b * (1 / n));
  }
  auto r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : q) r = r - e * r.dot(e);
  return r.norm();
}

bool cond_F(const CurveZ& Z, const Quad& u) {
  if (Z.degenerate()) return true;
  return dist_to_span(QAlgebraVector::H() * (1 / kSqrt2), {Z.tangent(u)}) > Quad(1e-6);
}

bool cond_HF(const CurveZ& Z, const Quad& u, Horo H) {
  std::vector<QAlgebraVector> span{QAlgebraVector::H()};
  if (!Z.degenerate()) span.push_back(Z.tangent(u));
  return dist_to_span(horo_direction(H), span) > Quad(1e-6);
}

Quad theta(const ZLike& Z, const ZLike::Param& p, Horo H) {
  return dist_to_span(horo_direction(H), Z.tangents(p.u, p.t));
}

Quad transversality_constant(const ZLike& Z, Horo H) {
  Quad m = num::infinity<Quad>();
  for (const auto& p : Z.sample_params()) m = std::min(m, theta(Z, p, H));
  return m;
}

namespace {

// Sampled self-distance check of {g_t z(u) : |t| <= tau}: grid points that are
// not neighbours in the parameter grid must stay kappa apart.
bool embedded_at(const CurveZ& Z, const Quad& tau) {
  const auto& s = Z.samples();
  for (const auto& smp : s)
    if (!cond_F(Z, smp.u)) return false;
  // u grid: at most 48 samples; a periodic curve drops the duplicate endpoint
  size_t count = Z.period() ? s.size() - 1 : s.size();
  size_t stride = std::max<size_t>(1, (count + 47) / 48);
  std::vector<size_t> idx;
  for (size_t i = 0; i < count; i += stride) idx.push_back(i);
  const int nt = 8;
  Quad speed = num::infinity<Quad>();
  for (size_t i : idx) speed = std::min(speed, s[i].tangent.norm());
  Quad du = idx.size() > 1 ? s[idx[1]].u - s[idx[0]].u : Quad(0);

  Quad dt = 2 * tau / nt;
  Quad kappa = Quad(0.3) * kSqrt2 * dt;
  if (!Z.degenerate() && idx.size() > 1) kappa = std::min(kappa, Quad(0.3) * du * speed);
  double kd = num::to_double(kappa);
  struct Pt {
    size_t i;
    int j;
    ReducedBasis<double> r;
  };
  std::vector<Pt> pts;
  for (size_t ii = 0; ii < idx.size(); ++ii)
    for (int j = 0; j <= nt; ++j) {
      Quad t = -tau + dt * j;
      auto B = (one_param(OneParam::diagonal(), t) * Z.element(s[idx[ii]].u, 0) * Z.seed()).cast<double>();
      pts.push_back({ii, j, reduced_basis(B)});
    }
  const size_t m = idx.size();
  for (size_t p = 0; p < pts.size(); ++p) {
    for (size_t q = p + 1; q < pts.size(); ++q) {
      size_t di = pts[p].i > pts[q].i ? pts[p].i - pts[q].i : pts[q].i - pts[p].i;
      if (Z.period()) di = std::min(di, m - di);
      int dj = std::abs(pts[p].j - pts[q].j);
      if (di < 2 && dj < 2) continue;
      if (std::abs(std::log(pts[p].r.systole / pts[q].r.systole)) > 0.5) continue;
      auto d = local_log(pts[p].r, pts[q].r);
      if (d && d->dist <= kd) {
        if (std::getenv("SL2LAB_DEBUG_EMBED"))
          std::fprintf(stderr, "embed tau=%g pair (%zu,%d)-(%zu,%d) dist=%g kappa=%g\n", num::to_double(tau), idx[pts[p].i], pts[p].j, idx[pts[q].i], pts[q].j, d->dist, kd);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

Quad embedding_radius(const CurveZ& Z, const Quad& tau_start) {
  for (Quad tau = tau_start; tau > Quad(1e-12); tau /= 2)
    if (embedded_at(Z, tau)) return tau;
  return 0;
}

ThickenedZ thicken(const CurveZ& Z, const Quad& tau, int n_t) {
  if (!(tau >= 0)) throw InvalidParameter("thicken: tau must be nonnegative");
  if (tau > 0 && !embedded_at(Z, tau)) throw ParameterTooLarge("thicken: surface fails the embedding check at tau");
  return ThickenedZ(Z, tau, n_t);
}

bool smooth_within(const ZLike& Z, const Quad& b, const Quad& sigma, int density) {
  if (Z.dim() == 0) return true;
  const auto& params = Z.sample_params();
  const size_t picks = std::min<size_t>(params.size(), Z.dim() == 1 ? 16 : 24);
  std::vector<QAlgebraVector> offsets{QAlgebraVector{}};
  for (int k = 0; k < 3; ++k) {
    std::array<Quad, 3> e{0, 0, 0};
    e[k] = sigma / 2;
    offsets.push_back(QAlgebraVector::from_orthonormal(e));
    offsets.push_back(-QAlgebraVector::from_orthonormal(e));
  }
  const bool vary_u = Z.u_max() > Z.u_min();
  const bool vary_t = Z.t_max() > Z.t_min();
  const bool two = vary_u && vary_t;
  const int nu = vary_u ? (two ? 8 : 16) * density : 0;
  const int nt = vary_t ? (two ? 8 : 16) * density : 0;

  for (size_t pi = 0; pi < picks; ++pi) {
    const auto& p = params[pi * params.size() / picks];
    auto tg = Z.tangents(p.u, p.t);
    Quad speed_u = vary_u && !tg.empty() ? tg[0].norm() : Quad(0);
    Quad Wu = speed_u > 0 ? 2 * sigma / speed_u : Quad(0);
    Quad Wt = 2 * sigma / kSqrt2;
    auto Gp_inv = Z.element(p.u, p.t).inverse();
    auto clamp_u = [&](const Quad& u) {
      if (Z.period()) return u;
      return std::clamp(u, Z.u_min(), Z.u_max());
    };
    auto clamp_t = [&](const Quad& t) { return std::clamp(t, Z.t_min(), Z.t_max()); };

    for (const auto& a : offsets) {
      auto Ea_inv = exp_alg(-a);
      auto zeta = [&](const Quad& u, const Quad& t) -> std::optional<QAlgebraVector> {
        auto M = Z.element(u, t) * Gp_inv * Ea_inv;
        if (!(M.distance_to_identity() <= Quad(0.5))) return std::nullopt;
        return log_alg(M);
      };
      struct Kept {
        Quad u, t;
        QAlgebraVector z;
      };
      std::vector<Kept> kept;
      for (int i = 0; i <= nu; ++i) {
        Quad u = speed_u > 0 ? clamp_u(p.u - Wu + 2 * Wu * i / nu) : p.u;
        for (int j = 0; j <= nt; ++j) {
          Quad t = vary_t ? clamp_t(p.t - Wt + 2 * Wt * j / nt) : p.t;
          auto z = zeta(u, t);
          if (z && z->norm() <= sigma) kept.push_back({u, t, *z});
        }
      }
      if (kept.empty()) continue;
      const Kept* c = &kept[0];
      for (const auto& k : kept)
        if (k.z.norm() < c->z.norm()) c = &k;
      std::vector<QAlgebraVector> L;
      Quad hu = Wu > 0 ? Wu * Quad(1e-8) : Quad(1e-12);
      Quad ht = Wt * Quad(1e-8);
      if (speed_u > 0) {
        auto zp = zeta(c->u + hu, c->t), zm = zeta(c->u - hu, c->t);
        if (zp && zm) L.push_back((*zp - *zm) * (1 / (2 * hu)));
      }
      if (vary_t) {
        auto zp = zeta(c->u, c->t + ht), zm = zeta(c->u, c->t - ht);
        if (zp && zm) L.push_back((*zp - *zm) * (1 / (2 * ht)));
      }
      for (const auto& k : kept)
        if (dist_to_span(k.z - c->z, L) > b * sigma) return false;
    }
  }
  return true;
}

Quad sigma2_estimate(const ZLike& Z, const Quad& b, const Quad& sigma1, int density) {
  if (!(b > 0)) throw InvalidParameter("sigma2_estimate: b must be positive");
  Quad s = sigma1;
  for (int k = 0; k < 200; ++k, s /= 2)
    if (smooth_within(Z, b, s, density)) return s;
  return s;
}

int lie_span_rank(const std::vector<AlgebraVector>& generators) {
  using Int = boost::multiprecision::cpp_int;
  // doubles are dyadic: scale everything by a common power of two and eliminate over Z (Bareiss)
  int min_exp = 0;
  for (const auto& g : generators)
    for (double d : {g.e, g.f, g.h})
      if (d != 0) {
        if (!std::isfinite(d)) throw InvalidParameter("lie_span_rank: non-finite generator");
        int e;
        std::frexp(d, &e);
        min_exp = std::min(min_exp, e - 53);
      }
  auto exact = [&](double d) {
    if (d == 0) return Int(0);
    int e;
    double m = std::frexp(d, &e);
    Int mant = static_cast<long long>(std::ldexp(m, 53));
    return Int(mant << (e - 53 - min_exp));
  };
  std::vector<std::array<Int, 3>> rows;
  for (const auto& g : generators) rows.push_back({exact(g.e), exact(g.f), exact(g.h)});
  const int m = static_cast<int>(rows.size());
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < 3 && rank < m; ++col) {
    int piv = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < m; ++r) {
      for (int c = col + 1; c < 3; ++c)
        rows[r][c] = Int((rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / prev);
      rows[r][col] = 0;
    }
    prev = rows[rank][col];
    ++rank;
  }
  return rank;
}

NearestPointFinder::NearestPointFinder(const ZLike& Z) : Z_(&Z) {
  for (const auto& p : Z.sample_params())
    coarse_.push_back(reduced_basis((Z.element(p.u, p.t) * Z.seed()).cast<double>()));
}

std::optional<NearestPoint> NearestPointFinder::find(const QLattice& x) const {
  const ZLike& Z = *Z_;
  const auto& params = Z.sample_params();
  auto rx = reduced_basis(x.basis().cast<double>());
  std::optional<LocalLog<double>> best;
  size_t best_i = 0;
  for (size_t i = 0; i < coarse_.size(); ++i) {
    if (std::abs(std::log(rx.systole / coarse_[i].systole)) > 0.5) continue;
    auto r = local_log(rx, coarse_[i]);
    if (r && (!best || r->dist < best->dist)) {
      best = r;
      best_i = i;
    }
  }
  if (!best) return std::nullopt;
  return refine(x, best_i, best->gamma);
}

std::vector<NearestPoint> NearestPointFinder::find_all(const QLattice& x, double radius) const {
  const auto& params = Z_->sample_params();
  auto rx = reduced_basis(x.basis().cast<double>());
  std::vector<std::pair<double, size_t>> hits;
  std::vector<IntMat> gammas(coarse_.size());
  for (size_t i = 0; i < coarse_.size(); ++i) {
    if (std::abs(std::log(rx.systole / coarse_[i].systole)) > 0.5) continue;
    auto r = local_log(rx, coarse_[i]);
    if (r && r->dist <= radius) {
      hits.push_back({r->dist, i});
      gammas[i] = r->gamma;
    }
  }
  std::sort(hits.begin(), hits.end());
  const Quad du = 3 * Z_->u_step();
  const Quad dt = Z_->t_max() > Z_->t_min() ? (Z_->t_max() - Z_->t_min()) / 4 : Quad(0);
  auto u_gap = [&](const Quad& a, const Quad& b) {
    Quad d = abs(a - b);
    if (Z_->period()) d = std::min(d, *Z_->period() - d);
    return d;
  };
  std::vector<NearestPoint> out;
  std::vector<ZLike::Param> seeds;
  for (const auto& [d, i] : hits) {
    const auto& p = params[i];
    bool covered = false;
    for (const auto& q : seeds)
      if (u_gap(p.u, q.u) <= du && abs(p.t - q.t) <= dt) covered = true;
    for (const auto& q : out)
      if (u_gap(p.u, q.param.u) <= du && abs(p.t - q.param.t) <= dt) covered = true;
    if (covered) continue;
    seeds.push_back(p);
    auto r = refine(x, i, gammas[i]);
    if (!r) continue;
    bool dup = false;
    for (const auto& q : out)
      if (u_gap(r->param.u, q.param.u) <= Quad("1e-9") && abs(r->param.t - q.param.t) <= Quad("1e-9")) dup = true;
    if (!dup) out.push_back(*r);
  }
  std::sort(out.begin(), out.end(), [](const NearestPoint& a, const NearestPoint& b) { return a.dist < b.dist; });
  return out;
}

std::optional<NearestPoint> NearestPointFinder::refine(const QLattice& x, size_t start, const IntMat& gamma) const {
  const ZLike& Z = *Z_;
  const auto& params = Z.sample_params();
  const auto BxG = x.basis() * int_to_group<Quad>(gamma);
  const auto seed_inv = Z.seed().inverse();
  auto zeta = [&](const Quad& u, const Quad& t) -> std::optional<QAlgebraVector> {
    auto M = BxG * seed_inv * Z.element(u, t).inverse();
    if (!(M.distance_to_identity() <= Quad(0.5))) return std::nullopt;
    return log_alg(M);
  };
  Quad u = params[start].u, t = params[start].t;
  auto z = zeta(u, t);
  if (!z) return std::nullopt;

  const bool vary_u = Z.u_max() > Z.u_min();
  const bool vary_t = Z.t_max() > Z.t_min();
  auto clamp = [&](Quad& uu, Quad& tt) {
    if (!Z.period()) uu = std::clamp(uu, Z.u_min(), Z.u_max());
    tt = std::clamp(tt, Z.t_min(), Z.t_max());
  };
  // Gauss-Newton on ||zeta(u, t)||^2 with central-difference Jacobian.
  for (int it = 0; it < 40 && (vary_u || vary_t); ++it) {
    auto r = z->orthonormal();
    std::vector<std::array<Quad, 3>> J;
    const Quad h("1e-12");
    if (vary_u) {
      auto p = zeta(u + h, t), m = zeta(u - h, t);
      if (!p || !m) break;
      auto d = ((*p - *m) * (1 / (2 * h))).orthonormal();
      J.push_back(d);
    }
    if (vary_t) {
      auto p = zeta(u, t + h), m = zeta(u, t - h);
      if (!p || !m) break;
      J.push_back(((*p - *m) * (1 / (2 * h))).orthonormal());
    }
    auto dot3 = [](const std::array<Quad, 3>& a, const std::array<Quad, 3>& b) {
      return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    std::vector<Quad> step(J.size());
    if (J.size() == 1) {
      Quad jj = dot3(J[0], J[0]);
      if (!(jj > 0)) break;
      step[0] = -dot3(J[0], r) / jj;
    } else {
      Quad a11 = dot3(J[0], J[0]), a12 = dot3(J[0], J[1]), a22 = dot3(J[1], J[1]);
      Quad g1 = -dot3(J[0], r), g2 = -dot3(J[1], r);
      Quad det = a11 * a22 - a12 * a12;
      if (!(det > 0)) break;
      step[0] = (a22 * g1 - a12 * g2) / det;
      step[1] = (a11 * g2 - a12 * g1) / det;
    }
    Quad cur = z->norm();
    bool moved = false;
    for (Quad lam = 1; lam > Quad(1e-6); lam /= 2) {
      Quad nu = u, nt = t;
      size_t k = 0;
      if (vary_u) nu += lam * step[k++];
      if (vary_t) nt += lam * step[k++];
      clamp(nu, nt);
      auto nz = zeta(nu, nt);
      if (nz && nz->norm() <= cur) {
        moved = nu != u || nt != t;
        u = nu;
        t = nt;
        z = nz;
        break;
      }
    }
    if (!moved) break;
  }
  return NearestPoint{{u, t}, z->norm(), gamma, *z};
}

}  // namespace sl2lab
