#pragma once

// Charts on X, closed horocycles Z_v, their g_t-thickenings, and the
// transversality toolkit. Everything here runs in binary128.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sl2lab/lattice.hpp"

namespace sl2lab {

enum class Horo { upper, lower };

// Unit tangent of the H-orbit in right-trivialized coordinates: E or F.
QAlgebraVector horo_direction(Horo H);

class Chart {
 public:
  // radius must lie in (0, 0.5].
  Chart(QLattice base, Quad radius);
  const QLattice& base() const { return base_; }
  const Quad& radius() const { return radius_; }

 private:
  QLattice base_;
  Quad radius_;
};

// exp(X) * base; OutOfDomain when ||X|| > radius.
QLattice chart_apply(const Chart& c, const QAlgebraVector& X);
// Inverse of chart_apply; OutOfDomain when x is not in the chart image.
QAlgebraVector chart_invert(const Chart& c, const QLattice& x);

// Sampled check that dist_X(exp(X) y, exp(Y) y) / ||X - Y|| lies in [1/2, 2] for
// X, Y in the algebra ball of the given radius around 0.
bool chart_bilipschitz_ok(const QLattice& base, const Quad& radius, int pairs, unsigned long long seed);

// Largest sigma1 = start * 2^-k such that every base is 2-bi-Lipschitz on the
// ball of radius 4 sigma1 (the chart domain the avoidance constants use).
Quad bilipschitz_radius(const std::vector<QLattice>& bases, const Quad& start = Quad(0.125), int pairs = 64);

// A sampled submanifold of dimension 0, 1 or 2 given by a parametrized family
// of group elements acting on a seed basis: z(u, t) = element(u, t) * seed.
class ZLike {
 public:
  struct Param {
    Quad u = 0, t = 0;
  };

  virtual ~ZLike() = default;

  virtual int dim() const = 0;
  virtual QGroupElement element(const Quad& u, const Quad& t) const = 0;
  // Right-trivialized tangent vectors at z(u, t): dim() of them.
  virtual std::vector<QAlgebraVector> tangents(const Quad& u, const Quad& t) const = 0;
  virtual const std::vector<Param>& sample_params() const = 0;

  const QGroupElement& seed() const { return seed_; }
  QLattice at(const Quad& u, const Quad& t = 0) const { return QLattice(element(u, t) * seed_); }
  const Quad& u_min() const { return u_min_; }
  const Quad& u_max() const { return u_max_; }
  const std::optional<Quad>& period() const { return period_; }
  virtual Quad t_min() const { return 0; }
  virtual Quad t_max() const { return 0; }
  // Nominal sample spacing in u (for local searches).
  Quad u_step() const;

 protected:
  QGroupElement seed_;
  Quad u_min_ = 0, u_max_ = 0;
  int n_u_ = 0;  // sample intervals in u
  std::optional<Quad> period_;
};

struct CurveSample {
  Quad u;
  QLattice z;
  QAlgebraVector tangent;
};

class CurveZ : public ZLike {
 public:
  using Path = std::function<QGroupElement(const Quad&)>;
  using Tangent = std::function<QAlgebraVector(const Quad&)>;

  // z(u) = path(u) * seed for u in [u0, u1], sampled at n+1 equally spaced points.
  // Without an analytic tangent, tangents are central differences of the path.
  CurveZ(Path path, QGroupElement seed, Quad u0, Quad u1, int n, std::optional<Quad> period = std::nullopt,
         Tangent tangent = nullptr);

  // Degenerate curve: a single point.
  static CurveZ point(const QLattice& x);
  // u -> exp(u X) * base.
  static CurveZ orbit(const QAlgebraVector& X, const QLattice& base, Quad u0, Quad u1, int n);

  int dim() const override { return degenerate_ ? 0 : 1; }
  QGroupElement element(const Quad& u, const Quad& t) const override;
  std::vector<QAlgebraVector> tangents(const Quad& u, const Quad& t) const override;
  const std::vector<Param>& sample_params() const override { return params_; }

  QAlgebraVector tangent(const Quad& u) const;
  const std::vector<CurveSample>& samples() const { return samples_; }
  bool degenerate() const { return degenerate_; }
  const Path& path() const { return path_; }

  // Same curve restricted to [u0, u1] with n+1 samples (no period).
  CurveZ arc(const Quad& u0, const Quad& u1, int n) const;

 private:
  Path path_;
  Tangent tangent_fn_;
  bool degenerate_ = false;
  std::vector<CurveSample> samples_;
  std::vector<Param> params_;
};

class ThickenedZ : public ZLike {
 public:
  // {g_t z(u) : |t| <= tau}; n_t + 1 samples in t (one when tau = 0).
  ThickenedZ(CurveZ source, Quad tau, int n_t = 8);

  int dim() const override;
  QGroupElement element(const Quad& u, const Quad& t) const override;
  std::vector<QAlgebraVector> tangents(const Quad& u, const Quad& t) const override;
  const std::vector<Param>& sample_params() const override { return params_; }
  Quad t_min() const override { return -tau_; }
  Quad t_max() const override { return tau_; }

  const CurveZ& source() const { return source_; }
  const Quad& tau() const { return tau_; }

 private:
  CurveZ source_;
  Quad tau_;
  std::vector<Param> params_;
};

// V-orbits of seed lattices containing v_of_a(a)/n primitively, n = 1..n_max,
// each sampled at n_samples+1 points over one numerically detected period.
std::vector<CurveZ> make_Zv(double a, int n_max, int n_samples = 256);

// The basis [v, w] with w = v^perp / |v|^2 (determinant one, v primitive).
QGroupElement seed_basis_containing(const Vec2<Quad>& v);

// First return of s -> path(s) * seed to the seed under dist_X: coarse scan of
// step ds up to s_max, then refinement. nullopt if no return within 1e-6.
std::optional<Quad> detect_period(const CurveZ::Path& path, const QGroupElement& seed, const Quad& s_max,
                                  const Quad& ds);

// max_i dist_X(z(u_{i+1}), exp(du * tangent(u_i)) z(u_i)) / du^2.
Quad tangent_consistency(const CurveZ& Z);

bool cond_F(const CurveZ& Z, const Quad& u);
bool cond_HF(const CurveZ& Z, const Quad& u, Horo H);

// Distance of the unit H-direction from the tangent space of Z at parameter p.
Quad theta(const ZLike& Z, const ZLike::Param& p, Horo H);
// Minimum of theta over the sample grid.
Quad transversality_constant(const ZLike& Z, Horo H);

// Largest tau on the halving grid tau_start * 2^-k whose thickening passes the
// sampled self-distance (embedding) check.
Quad embedding_radius(const CurveZ& Z, const Quad& tau_start = Quad(0.5));

// ThickenedZ after running the embedding check at tau itself; ParameterTooLarge if it fails.
ThickenedZ thicken(const CurveZ& Z, const Quad& tau, int n_t = 8);

// Containment test behind sigma2_estimate: every chart image phi_y(B(y, sigma) cap Z),
// for bases y near sampled points of Z, lies within b*sigma of the tangent
// subspace at the point of Z nearest y. density scales the local patch grid.
bool smooth_within(const ZLike& Z, const Quad& b, const Quad& sigma, int density = 1);

// Halving search from sigma1 for the largest sigma passing smooth_within.
// Below b ~ 1e-20 the tangent difference quotients hit the quad round-off floor.
Quad sigma2_estimate(const ZLike& Z, const Quad& b, const Quad& sigma1, int density = 1);

// Rank of the span in sl2 (exact integer elimination of the double inputs).
int lie_span_rank(const std::vector<AlgebraVector>& generators);

// Distance from v to span(basis) in the algebra inner product (Gram-Schmidt;
// basis vectors of norm below 1e-30 are ignored).
Quad dist_to_span(const QAlgebraVector& v, const std::vector<QAlgebraVector>& basis);

struct NearestPoint {
  ZLike::Param param;
  Quad dist;
  // x's basis * gamma = exp(X) * z(param)'s basis (as produced by ZLike::at).
  IntMat gamma;
  QAlgebraVector X;
};

// Nearest point of Z to x in the local regime (nullopt when every sample is far).
// Coarse search over samples in double, then Gauss-Newton refinement in binary128.
class NearestPointFinder {
 public:
  explicit NearestPointFinder(const ZLike& Z);
  std::optional<NearestPoint> find(const QLattice& x) const;
  // Local minimizers of the distance from x, one per cluster of coarse samples within
  // radius (double-precision prefilter), refined in quad and sorted by distance.
  std::vector<NearestPoint> find_all(const QLattice& x, double radius) const;
  const ZLike& surface() const { return *Z_; }

 private:
  std::optional<NearestPoint> refine(const QLattice& x, size_t start, const IntMat& gamma) const;

  const ZLike* Z_;
  std::vector<ReducedBasis<double>> coarse_;
};

}  // namespace sl2lab
