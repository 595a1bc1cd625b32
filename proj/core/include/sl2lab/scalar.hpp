#pragma once

// Scalar types. Quad is IEEE binary128 (via libquadmath); the avoidance
// strategy needs it because its slab widths sit ~1e-13 below the ball radius
// and six stages of H+ expansion multiply round-off by ~1e13.

#include <boost/multiprecision/float128.hpp>
#include <boost/math/constants/constants.hpp>
#include <quadmath.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

namespace sl2lab {

using Quad = boost::multiprecision::float128;

namespace num {

using std::abs;
using std::acos;
using std::ceil;
using std::cos;
using std::cosh;
using std::exp;
using std::floor;
using std::log;
using std::round;
using std::sin;
using std::sinh;
using std::sqrt;

// Boost's float128 wrappers for these do not compile with gcc 11.
inline Quad log1p(const Quad& x) { return Quad(::log1pq(x.backend().value())); }
inline Quad expm1(const Quad& x) { return Quad(::expm1q(x.backend().value())); }
inline Quad acosh(const Quad& x) { return Quad(::acoshq(x.backend().value())); }
inline double log1p(double x) { return std::log1p(x); }
inline double expm1(double x) { return std::expm1(x); }
inline double acosh(double x) { return std::acosh(x); }
inline long double log1p(long double x) { return std::log1p(x); }
inline long double expm1(long double x) { return std::expm1(x); }
inline long double acosh(long double x) { return std::acosh(x); }

template <class T>
inline T pi() {
  return boost::math::constants::pi<T>();
}

template <class T>
inline T epsilon() {
  return std::numeric_limits<T>::epsilon();
}

template <class T>
inline T infinity() {
  return std::numeric_limits<T>::infinity();
}

template <class T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

template <class T>
inline long long to_ll(const T& x) {
  return static_cast<long long>(x);
}

// Shortest decimal text that round-trips T.
template <class T>
std::string to_string(const T& x);

template <>
inline std::string to_string<double>(const double& x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <>
inline std::string to_string<Quad>(const Quad& x) {
  char buf[64];
  ::quadmath_snprintf(buf, sizeof buf, "%.36Qg", x.backend().value());
  return buf;
}

inline Quad parse_quad(const std::string& s) { return Quad(::strtoflt128(s.c_str(), nullptr)); }

}  // namespace num
}  // namespace sl2lab
