#pragma once

// SL(2,R) and sl(2,R). Algebra coordinates (e, f, h) stand for the traceless
// matrix [[h, e], [f, -h]] = e*E + f*F + h*H. Inner product is trace(X^T Y),
// so ||X||^2 = e^2 + f^2 + 2 h^2 and Ad(g_t) = diag(e^{2t}, e^{-2t}, 1).

#include <array>
#include <cmath>
#include <string>

#include "sl2lab/errors.hpp"
#include "sl2lab/scalar.hpp"

namespace sl2lab {

template <class T>
using Vec2 = std::array<T, 2>;

template <class T>
struct BasicAlgebraVector {
  T e{0}, f{0}, h{0};

  BasicAlgebraVector() = default;
  BasicAlgebraVector(T e_, T f_, T h_) : e(std::move(e_)), f(std::move(f_)), h(std::move(h_)) {}

  static BasicAlgebraVector E() { return {T(1), T(0), T(0)}; }
  static BasicAlgebraVector F() { return {T(0), T(1), T(0)}; }
  static BasicAlgebraVector H() { return {T(0), T(0), T(1)}; }

  // Orthonormal coordinates (e, f, sqrt(2) h); game charts use these.
  std::array<T, 3> orthonormal() const {
    using std::sqrt;
    return {e, f, sqrt(T(2)) * h};
  }
  static BasicAlgebraVector from_orthonormal(const std::array<T, 3>& u) {
    using std::sqrt;
    return {u[0], u[1], u[2] / sqrt(T(2))};
  }

  T dot(const BasicAlgebraVector& o) const { return e * o.e + f * o.f + T(2) * h * o.h; }
  T norm() const {
    using std::sqrt;
    return sqrt(dot(*this));
  }

  BasicAlgebraVector operator+(const BasicAlgebraVector& o) const { return {e + o.e, f + o.f, h + o.h}; }
  BasicAlgebraVector operator-(const BasicAlgebraVector& o) const { return {e - o.e, f - o.f, h - o.h}; }
  BasicAlgebraVector operator-() const { return {-e, -f, -h}; }
  BasicAlgebraVector operator*(const T& s) const { return {e * s, f * s, h * s}; }
  friend BasicAlgebraVector operator*(const T& s, const BasicAlgebraVector& x) { return x * s; }
  BasicAlgebraVector& operator+=(const BasicAlgebraVector& o) { return *this = *this + o; }

  template <class U>
  BasicAlgebraVector<U> cast() const {
    return {U(e), U(f), U(h)};
  }
};

template <class T>
class BasicGroupElement {
 public:
  BasicGroupElement() : a_(1), b_(0), c_(0), d_(1) {}

  // Rows [a b; c d]. Throws InvalidParameter unless det = 1 within 1e-9.
  BasicGroupElement(T a, T b, T c, T d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    using std::abs;
    T scale = T(1) + a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_;
    if (!(abs(det() - T(1)) <= T(1e-9) * scale)) throw InvalidParameter("GroupElement: determinant is not 1");
  }

  static BasicGroupElement identity() { return {}; }

  // Skips the determinant check; for internal products known to be unimodular.
  static BasicGroupElement unchecked(T a, T b, T c, T d) {
    BasicGroupElement g;
    g.a_ = std::move(a);
    g.b_ = std::move(b);
    g.c_ = std::move(c);
    g.d_ = std::move(d);
    return g;
  }

  const T& a() const { return a_; }
  const T& b() const { return b_; }
  const T& c() const { return c_; }
  const T& d() const { return d_; }
  T det() const { return a_ * d_ - b_ * c_; }
  T trace() const { return a_ + d_; }

  BasicGroupElement operator*(const BasicGroupElement& o) const {
    return unchecked(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
  }
  BasicGroupElement inverse() const { return unchecked(d_, -b_, -c_, a_); }
  BasicGroupElement operator-() const { return unchecked(-a_, -b_, -c_, -d_); }

  Vec2<T> apply(const Vec2<T>& v) const { return {a_ * v[0] + b_ * v[1], c_ * v[0] + d_ * v[1]}; }

  // Largest singular value of (this - I).
  T distance_to_identity() const { return op_norm(a_ - T(1), b_, c_, d_ - T(1)); }

  template <class U>
  BasicGroupElement<U> cast() const {
    return BasicGroupElement<U>::unchecked(U(a_), U(b_), U(c_), U(d_));
  }

  // Operator norm of a 2x2 matrix.
  static T op_norm(const T& a, const T& b, const T& c, const T& d) {
    using std::abs;
    using std::sqrt;
    T p = (a * a + b * b + c * c + d * d) / T(2);
    T q = a * d - b * c;
    T disc = p * p - q * q;
    if (disc < T(0)) disc = T(0);
    return sqrt(p + sqrt(disc));
  }

 private:
  T a_, b_, c_, d_;
};

using AlgebraVector = BasicAlgebraVector<double>;
using GroupElement = BasicGroupElement<double>;
using QAlgebraVector = BasicAlgebraVector<Quad>;
using QGroupElement = BasicGroupElement<Quad>;

enum class OneParamKind { diagonal, upper, lower, stabilizer };

struct OneParam {
  OneParamKind kind = OneParamKind::diagonal;
  double a = 0;  // only for stabilizer

  static OneParam diagonal() { return {OneParamKind::diagonal, 0}; }
  static OneParam upper() { return {OneParamKind::upper, 0}; }
  static OneParam lower() { return {OneParamKind::lower, 0}; }
  static OneParam stabilizer(double a) {
    if (!(a != 0) || !std::isfinite(a)) throw InvalidParameter("stabilizer subgroup needs a nonzero finite a");
    return {OneParamKind::stabilizer, a};
  }
};

// g_s, h_s, the lower unipotent, or V_a(s). V_a fixes v_of_a(a); for a < 0 it is
// [[1-s, -s], [s, 1+s]] (see README, "Conventions").
template <class T>
BasicGroupElement<T> one_param(const OneParam& k, const T& s) {
  using std::exp;
  using std::isfinite;
  if (!isfinite(s)) throw InvalidParameter("one_param: parameter must be finite");
  switch (k.kind) {
    case OneParamKind::diagonal:
      return BasicGroupElement<T>::unchecked(exp(s), T(0), T(0), exp(-s));
    case OneParamKind::upper:
      return BasicGroupElement<T>::unchecked(T(1), s, T(0), T(1));
    case OneParamKind::lower:
      return BasicGroupElement<T>::unchecked(T(1), T(0), s, T(1));
    case OneParamKind::stabilizer:
      if (k.a == 0) throw InvalidParameter("stabilizer subgroup needs a nonzero a");
      if (k.a > 0) return BasicGroupElement<T>::unchecked(T(1) + s, -s, s, T(1) - s);
      return BasicGroupElement<T>::unchecked(T(1) - s, -s, s, T(1) + s);
  }
  throw InvalidParameter("one_param: unknown kind");
}

// Derivative of one_param at s = 0.
template <class T>
BasicAlgebraVector<T> generator(const OneParam& k) {
  switch (k.kind) {
    case OneParamKind::diagonal:
      return {T(0), T(0), T(1)};
    case OneParamKind::upper:
      return {T(1), T(0), T(0)};
    case OneParamKind::lower:
      return {T(0), T(1), T(0)};
    case OneParamKind::stabilizer:
      if (k.a > 0) return {T(-1), T(1), T(1)};
      return {T(-1), T(1), T(-1)};
  }
  throw InvalidParameter("generator: unknown kind");
}

// (sqrt a, sqrt a) for a > 0, (-sqrt|a|, sqrt|a|) for a < 0; x*y = a either way.
template <class T = double>
Vec2<T> v_of_a(const T& a) {
  using std::abs;
  using std::sqrt;
  if (!(a != T(0))) throw InvalidParameter("v_of_a: a must be nonzero");
  T r = sqrt(abs(a));
  if (a > T(0)) return {r, r};
  return {-r, r};
}

namespace detail {

// cosh(sqrt u) and sinh(sqrt u)/sqrt(u) as power series in u.
template <class T>
void cosh_sinhc_series(const T& u, T& ch, T& shc) {
  ch = T(0);
  shc = T(0);
  T term_c = T(1), term_s = T(1);
  for (int k = 0; k < 6; ++k) {
    ch += term_c;
    shc += term_s;
    term_c = term_c * u / T((2 * k + 1) * (2 * k + 2));
    term_s = term_s * u / T((2 * k + 2) * (2 * k + 3));
  }
}

}  // namespace detail

template <class T>
BasicGroupElement<T> exp_alg(const BasicAlgebraVector<T>& X) {
  using std::abs;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  T u = X.h * X.h + X.e * X.f;  // theta^2 = -det X
  T ch, shc;
  if (abs(u) < T(1e-8)) {
    detail::cosh_sinhc_series(u, ch, shc);
  } else if (u > T(0)) {
    T th = sqrt(u);
    ch = cosh(th);
    shc = sinh(th) / th;
  } else {
    T th = sqrt(-u);
    ch = cos(th);
    shc = sin(th) / th;
  }
  return BasicGroupElement<T>::unchecked(ch + shc * X.h, shc * X.e, shc * X.f, ch - shc * X.h);
}

template <class T>
BasicAlgebraVector<T> log_alg(const BasicGroupElement<T>& g) {
  using std::abs;
  using std::acos;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  if (!(g.distance_to_identity() <= T(0.5))) throw OutOfDomain("log_alg: element too far from the identity");
  T s = g.trace() / T(2);
  T u;  // theta^2
  if (s >= T(1)) {
    T x = s - T(1);
    T th = num::log1p(x + sqrt(x * (s + T(1))));
    u = th * th;
  } else {
    T th = acos(s);
    u = -th * th;
  }
  // theta / sinh(theta) as a function of u = theta^2
  T fac;
  if (abs(u) < T(1e-8)) {
    static const T coef[6] = {T(1), T(-1) / T(6), T(7) / T(360), T(-31) / T(15120), T(127) / T(604800),
                              T(-73) / T(3421440)};
    fac = T(0);
    for (int k = 5; k >= 0; --k) fac = fac * u + coef[k];
  } else if (u > T(0)) {
    T th = sqrt(u);
    fac = th / sinh(th);
  } else {
    T th = sqrt(-u);
    fac = th / sin(th);
  }
  return {fac * g.b(), fac * g.c(), fac * (g.a() - g.d()) / T(2)};
}

// Coordinates of g X g^{-1}.
template <class T>
BasicAlgebraVector<T> adjoint(const BasicGroupElement<T>& g, const BasicAlgebraVector<T>& X) {
  // M = g X, then M g^{-1} with g^{-1} = [d -b; -c a]
  const T &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  T m11 = a * X.h + b * X.f, m12 = a * X.e - b * X.h;
  T m21 = c * X.h + d * X.f, m22 = c * X.e - d * X.h;
  T r11 = m11 * d - m12 * c;
  T r12 = -m11 * b + m12 * a;
  T r21 = m21 * d - m22 * c;
  T r22 = -m21 * b + m22 * a;
  return {r12, r21, (r11 - r22) / T(2)};
}

// Ad(g_t) in closed form (exact scaling, no matrix round-off).
template <class T>
BasicAlgebraVector<T> adjoint_diagonal(const T& t, const BasicAlgebraVector<T>& X) {
  using std::exp;
  T s = exp(T(2) * t);
  return {X.e * s, X.f / s, X.h};
}

}  // namespace sl2lab
