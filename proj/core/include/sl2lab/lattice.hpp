#pragma once

// Unimodular lattices in R^2 (points of SL(2,R)/SL(2,Z)).

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "sl2lab/algebra.hpp"

namespace sl2lab {

// Integer 2x2 matrix, row-major [a b; c d].
using IntMat = std::array<long long, 4>;

inline IntMat int_mul(const IntMat& x, const IntMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
inline IntMat int_identity() { return {1, 0, 0, 1}; }
// Inverse of a determinant +-1 matrix.
inline IntMat int_inverse(const IntMat& m) {
  long long det = m[0] * m[3] - m[1] * m[2];
  return {det * m[3], -det * m[1], -det * m[2], det * m[0]};
}

template <class T>
BasicGroupElement<T> int_to_group(const IntMat& m) {
  return BasicGroupElement<T>::unchecked(T(m[0]), T(m[1]), T(m[2]), T(m[3]));
}

// Lagrange-Gauss reduction of the columns of B, keeping det = +1. On return
// B_out = B * U.
template <class T>
BasicGroupElement<T> reduce_basis(const BasicGroupElement<T>& B, IntMat& U) {
  using std::round;
  T x1 = B.a(), y1 = B.c(), x2 = B.b(), y2 = B.d();
  U = int_identity();
  auto n = [](const T& x, const T& y) { return x * x + y * y; };
  auto swap_cols = [&] {
    // (b1, b2) -> (b2, -b1) preserves orientation
    T tx = x1, ty = y1;
    x1 = x2;
    y1 = y2;
    x2 = -tx;
    y2 = -ty;
    long long u0 = U[0], u2 = U[2];
    U[0] = U[1];
    U[2] = U[3];
    U[1] = -u0;
    U[3] = -u2;
  };
  if (n(x1, y1) > n(x2, y2)) swap_cols();
  for (int iter = 0; iter < 100000; ++iter) {
    T n1 = n(x1, y1);
    T mu = round((x1 * x2 + y1 * y2) / n1);
    if (mu != T(0)) {
      long long m = num::to_ll(mu);
      x2 -= mu * x1;
      y2 -= mu * y1;
      U[1] -= m * U[0];
      U[3] -= m * U[2];
    }
    if (!(n(x2, y2) < n1)) break;
    swap_cols();
  }
  return BasicGroupElement<T>::unchecked(x1, x2, y1, y2);
}

template <class T>
class BasicLattice {
 public:
  BasicLattice() = default;  // Z^2

  // Lattice spanned by the columns of a determinant-one matrix.
  explicit BasicLattice(const BasicGroupElement<T>& basis) : basis_(basis) { check_unimodular(basis_.det()); }

  // Columns b1, b2 with |det| = 1; a negative orientation is flipped by b2 -> -b2,
  // and coordinates are still reported in the supplied basis.
  static BasicLattice from_columns(const Vec2<T>& b1, const Vec2<T>& b2) {
    T det = b1[0] * b2[1] - b2[0] * b1[1];
    check_unimodular(det);
    BasicLattice x;
    if (det > T(0)) {
      x.basis_ = BasicGroupElement<T>::unchecked(b1[0], b2[0], b1[1], b2[1]);
    } else {
      x.basis_ = BasicGroupElement<T>::unchecked(b1[0], -b2[0], b1[1], -b2[1]);
      x.to_given_ = {1, 0, 0, -1};
    }
    return x;
  }

  static BasicLattice standard() { return {}; }

  const BasicGroupElement<T>& basis() const { return basis_; }
  Vec2<T> b1() const { return {basis_.a(), basis_.c()}; }
  Vec2<T> b2() const { return {basis_.b(), basis_.d()}; }
  bool reduced() const { return reduced_; }
  // Maps coordinates in basis() to coordinates in the basis the lattice was built from.
  const IntMat& to_given() const { return to_given_; }

  // g * x; coordinates stay attached to the transported basis.
  friend BasicLattice operator*(const BasicGroupElement<T>& g, const BasicLattice& x) {
    BasicLattice y;
    y.basis_ = g * x.basis_;
    y.to_given_ = x.to_given_;
    return y;
  }

  BasicLattice reduce() const {
    if (reduced_) return *this;
    IntMat U;
    BasicLattice r;
    r.basis_ = reduce_basis(basis_, U);
    r.to_given_ = int_mul(to_given_, U);
    r.reduced_ = true;
    return r;
  }

  template <class U>
  BasicLattice<U> cast() const {
    BasicLattice<U> y(basis_.template cast<U>(), to_given_, reduced_);
    return y;
  }

  BasicLattice(const BasicGroupElement<T>& basis, const IntMat& to_given, bool reduced)
      : basis_(basis), to_given_(to_given), reduced_(reduced) {}

 private:
  static void check_unimodular(const T& det) {
    using std::abs;
    if (!(abs(det) >= T(1e-12))) throw InvalidLattice("lattice basis is degenerate");
    if (!(abs(abs(det) - T(1)) <= T(1e-9))) throw InvalidLattice("lattice basis is not unimodular");
  }

  BasicGroupElement<T> basis_;
  IntMat to_given_ = int_identity();
  bool reduced_ = false;
};

using Lattice = BasicLattice<double>;
using QLattice = BasicLattice<Quad>;

template <class T>
BasicLattice<T> reduce(const BasicLattice<T>& x) {
  return x.reduce();
}

template <class T>
T systole(const BasicLattice<T>& x) {
  using std::sqrt;
  auto r = x.reduce();
  auto b = r.b1();
  return sqrt(b[0] * b[0] + b[1] * b[1]);
}

template <class T>
struct LatticePoint {
  std::array<long long, 2> coords;  // in the lattice's given basis
  Vec2<T> v;
  T norm;
};

// All nonzero lattice vectors of norm <= R, sorted by (norm, coords).
template <class T>
std::vector<LatticePoint<T>> enumerate(const BasicLattice<T>& x, const T& R) {
  using std::ceil;
  using std::sqrt;
  if (!(R > T(0))) throw InvalidParameter("enumerate: R must be positive");
  if (R > T(1e4)) throw ResourceLimit("enumerate: R exceeds 1e4");
  auto r = x.reduce();
  auto b1 = r.b1(), b2 = r.b2();
  T n1 = sqrt(b1[0] * b1[0] + b1[1] * b1[1]);
  T n2 = sqrt(b2[0] * b2[0] + b2[1] * b2[1]);
  // For a reduced basis the angle between b1 and b2 is in [60, 120] degrees, so
  // ||m b1 + n b2|| >= (sqrt(3)/2) max(|m| ||b1||, |n| ||b2||).
  T k = T(2) / sqrt(T(3));
  long long K1 = num::to_ll(ceil(k * R / n1)) + 1;
  long long K2 = num::to_ll(ceil(k * R / n2)) + 1;
  if (static_cast<double>(2 * K1 + 1) * static_cast<double>(2 * K2 + 1) > 4e8)
    throw ResourceLimit("enumerate: coefficient box too large");
  std::vector<LatticePoint<T>> out;
  T R2 = R * R;
  const IntMat& U = r.to_given();
  for (long long m = -K1; m <= K1; ++m) {
    for (long long n = -K2; n <= K2; ++n) {
      if (m == 0 && n == 0) continue;
      T vx = T(m) * b1[0] + T(n) * b2[0];
      T vy = T(m) * b1[1] + T(n) * b2[1];
      T q = vx * vx + vy * vy;
      if (q <= R2) out.push_back({{U[0] * m + U[1] * n, U[2] * m + U[3] * n}, {vx, vy}, sqrt(q)});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (p.norm != q.norm) return p.norm < q.norm;
    return p.coords < q.coords;
  });
  return out;
}

template <class T>
struct OrbitSample {
  T t;
  T systole;
};

// systole(g_t x) for t = 0, step, 2 step, ... <= t_max. Each step applies g_step
// to the current reduced basis, so entries stay O(1) however large t gets.
template <class T>
std::vector<OrbitSample<T>> orbit_systole_trace(const BasicLattice<T>& x, const T& t_max, const T& step) {
  using std::floor;
  if (!(step > T(0)) || !(t_max > T(0))) throw InvalidParameter("orbit: t_max and step must be positive");
  if (step > t_max) throw InvalidParameter("orbit: step exceeds t_max");
  long long steps = num::to_ll(floor(t_max / step + T(1e-9)));
  if (steps > 100000000) throw ResourceLimit("orbit: too many steps");
  auto g = one_param(OneParam::diagonal(), step);
  std::vector<OrbitSample<T>> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  auto cur = x.reduce();
  out.push_back({T(0), systole(cur)});
  for (long long k = 1; k <= steps; ++k) {
    cur = (g * cur).reduce();
    out.push_back({T(k) * step, systole(cur)});
  }
  return out;
}

// Minimum of the systole along the grid, with its (first) argmin.
template <class T>
OrbitSample<T> orbit_min_systole(const BasicLattice<T>& x, const T& t_max, const T& step) {
  auto tr = orbit_systole_trace(x, t_max, step);
  OrbitSample<T> best = tr.front();
  for (const auto& s : tr)
    if (s.systole < best.systole) best = s;
  return best;
}

template <class T>
bool contains_primitive(const BasicLattice<T>& x, const Vec2<T>& v, const T& tol) {
  using std::round;
  using std::sqrt;
  auto r = x.reduce();
  auto Binv = r.basis().inverse();
  auto c = Binv.apply(v);
  long long m0 = num::to_ll(round(c[0])), n0 = num::to_ll(round(c[1]));
  for (long long dm = -1; dm <= 1; ++dm) {
    for (long long dn = -1; dn <= 1; ++dn) {
      long long m = m0 + dm, n = n0 + dn;
      auto w = r.basis().apply({T(m), T(n)});
      T dx = w[0] - v[0], dy = w[1] - v[1];
      if (sqrt(dx * dx + dy * dy) <= tol && std::gcd(m, n) == 1) return true;
    }
  }
  return false;
}

namespace detail {

inline const std::vector<IntMat>& small_sl2z() {
  static const std::vector<IntMat> list = [] {
    std::vector<IntMat> out;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c)
          for (int d = -3; d <= 3; ++d)
            if (a * d - b * c == 1) out.push_back({a, b, c, d});
    return out;
  }();
  return list;
}

}  // namespace detail

// exp(X) . y = x with gamma the integer change used; basis_x * gamma = exp(X) * basis_y.
template <class T>
struct LocalLog {
  BasicAlgebraVector<T> X;
  IntMat gamma;
  T dist;
};

// A basis together with its reduction: R = B * U.
template <class T>
struct ReducedBasis {
  BasicGroupElement<T> R;
  BasicGroupElement<T> R_inv;
  IntMat U;
  T systole;
};

template <class T>
ReducedBasis<T> reduced_basis(const BasicGroupElement<T>& B) {
  using std::sqrt;
  ReducedBasis<T> r;
  r.R = reduce_basis(B, r.U);
  r.R_inv = r.R.inverse();
  r.systole = sqrt(r.R.a() * r.R.a() + r.R.c() * r.R.c());
  return r;
}

// Best local logarithm between two bases: searches the SL(2,Z) elements with
// entries in [-3,3] relative to the reduced bases and reports gamma relative to
// the bases as given.
template <class T>
std::optional<LocalLog<T>> local_log(const ReducedBasis<T>& x, const ReducedBasis<T>& y) {
  auto Rxd = x.R.template cast<double>();
  auto RyInvd = y.R_inv.template cast<double>();
  std::optional<LocalLog<T>> best;
  for (const IntMat& g : detail::small_sl2z()) {
    auto Md = Rxd * int_to_group<double>(g) * RyInvd;
    double fa = Md.a() - 1, fb = Md.b(), fc = Md.c(), fd = Md.d() - 1;
    if (fa * fa + fb * fb + fc * fc + fd * fd > 0.5625) continue;  // Frobenius > 0.75
    auto M = x.R * int_to_group<T>(g) * y.R_inv;
    if (!(M.distance_to_identity() <= T(0.5))) continue;
    auto X = log_alg(M);
    T d = X.norm();
    if (!best || d < best->dist) best = LocalLog<T>{X, int_mul(int_mul(x.U, g), int_inverse(y.U)), d};
  }
  return best;
}

template <class T>
std::optional<LocalLog<T>> local_log(const BasicGroupElement<T>& Bx, const BasicGroupElement<T>& By) {
  return local_log(reduced_basis(Bx), reduced_basis(By));
}

// Local distance on X; std::nullopt when the lattices are farther apart than 0.5
// (or no small change of basis brings them together).
template <class T>
std::optional<T> dist_X(const BasicLattice<T>& x, const BasicLattice<T>& y) {
  using std::abs;
  using std::log;
  T sx = systole(x), sy = systole(y);
  if (abs(log(sx / sy)) > T(0.5)) return std::nullopt;
  auto r = local_log(x.basis(), y.basis());
  if (!r || r->dist > T(0.5)) return std::nullopt;
  return r->dist;
}

}  // namespace sl2lab
