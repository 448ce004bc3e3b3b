// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"

namespace aperiodic {

namespace detail {

// Per-thread MPFR registers at double precision; every operation rounds the
// lower endpoint toward -inf and the upper toward +inf.
struct MpfrScratch {
  mpfr_t a, b, r;
  MpfrScratch() {
    mpfr_init2(a, 53);
    mpfr_init2(b, 53);
    mpfr_init2(r, 53);
  }
  ~MpfrScratch() {
    mpfr_clear(a);
    mpfr_clear(b);
    mpfr_clear(r);
  }
  MpfrScratch(const MpfrScratch&) = delete;
  MpfrScratch& operator=(const MpfrScratch&) = delete;
};

inline MpfrScratch& scratch() {
  thread_local MpfrScratch s;
  return s;
}

using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

inline double unary(Unary f, double x, mpfr_rnd_t rnd) {
  auto& s = scratch();
  mpfr_set_d(s.a, x, MPFR_RNDN);  // exact at 53 bits
  f(s.r, s.a, rnd);
  return mpfr_get_d(s.r, rnd);
}

inline double binary(Binary f, double x, double y, mpfr_rnd_t rnd) {
  auto& s = scratch();
  mpfr_set_d(s.a, x, MPFR_RNDN);
  mpfr_set_d(s.b, y, MPFR_RNDN);
  f(s.r, s.a, s.b, rnd);
  return mpfr_get_d(s.r, rnd);
}

}  // namespace detail

/// Closed interval [lo, hi] of reals with outward-rounded endpoints. Every
/// transcendental goes through MPFR with directed rounding, so the true value
/// of an expression is always contained in the interval computed for it.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double x) : lo(x), hi(x) {}  // NOLINT(implicit)
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  static Interval from_rational(const Rational& q) {
    auto& s = detail::scratch();
    mpfr_set_q(s.a, q.backend().data(), MPFR_RNDD);
    double l = mpfr_get_d(s.a, MPFR_RNDD);
    mpfr_set_q(s.a, q.backend().data(), MPFR_RNDU);
    double h = mpfr_get_d(s.a, MPFR_RNDU);
    return {l, h};
  }

  static Interval from_integer(const BigInt& z) { return from_rational(Rational(z)); }

  static Interval ln2() {
    auto& s = detail::scratch();
    mpfr_const_log2(s.r, MPFR_RNDD);
    double l = mpfr_get_d(s.r, MPFR_RNDD);
    mpfr_const_log2(s.r, MPFR_RNDU);
    return {l, mpfr_get_d(s.r, MPFR_RNDU)};
  }

  double width() const { return hi - lo; }
  double mid() const { return lo + (hi - lo) / 2; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const { return lo == hi; }
};

inline Interval operator-(const Interval& x) { return {-x.hi, -x.lo}; }

inline Interval operator+(const Interval& x, const Interval& y) {
  return {detail::binary(mpfr_add, x.lo, y.lo, MPFR_RNDD),
          detail::binary(mpfr_add, x.hi, y.hi, MPFR_RNDU)};
}

inline Interval operator-(const Interval& x, const Interval& y) {
  return {detail::binary(mpfr_sub, x.lo, y.hi, MPFR_RNDD),
          detail::binary(mpfr_sub, x.hi, y.lo, MPFR_RNDU)};
}

inline Interval operator*(const Interval& x, const Interval& y) {
  const double c[4][2] = {{x.lo, y.lo}, {x.lo, y.hi}, {x.hi, y.lo}, {x.hi, y.hi}};
  double l = std::numeric_limits<double>::infinity(), h = -l;
  for (auto& p : c) {
    l = std::min(l, detail::binary(mpfr_mul, p[0], p[1], MPFR_RNDD));
    h = std::max(h, detail::binary(mpfr_mul, p[0], p[1], MPFR_RNDU));
  }
  return {l, h};
}

inline Interval operator/(const Interval& x, const Interval& y) {
  if (y.lo <= 0.0 && y.hi >= 0.0) fail(ErrorCode::InvalidArgument, "interval division by zero");
  const double c[4][2] = {{x.lo, y.lo}, {x.lo, y.hi}, {x.hi, y.lo}, {x.hi, y.hi}};
  double l = std::numeric_limits<double>::infinity(), h = -l;
  for (auto& p : c) {
    l = std::min(l, detail::binary(mpfr_div, p[0], p[1], MPFR_RNDD));
    h = std::max(h, detail::binary(mpfr_div, p[0], p[1], MPFR_RNDU));
  }
  return {l, h};
}

inline Interval& operator+=(Interval& x, const Interval& y) { return x = x + y; }
inline Interval& operator-=(Interval& x, const Interval& y) { return x = x - y; }
inline Interval& operator*=(Interval& x, const Interval& y) { return x = x * y; }
inline Interval& operator/=(Interval& x, const Interval& y) { return x = x / y; }

inline Interval hull(const Interval& x, const Interval& y) {
  return {std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
}

inline Interval exp(const Interval& x) {
  return {detail::unary(mpfr_exp, x.lo, MPFR_RNDD), detail::unary(mpfr_exp, x.hi, MPFR_RNDU)};
}

inline Interval log(const Interval& x) {
  if (x.lo <= 0.0) fail(ErrorCode::InvalidArgument, "log of non-positive interval");
  return {detail::unary(mpfr_log, x.lo, MPFR_RNDD), detail::unary(mpfr_log, x.hi, MPFR_RNDU)};
}

inline Interval sqrt(const Interval& x) {
  if (x.lo < 0.0) fail(ErrorCode::InvalidArgument, "sqrt of negative interval");
  return {detail::unary(mpfr_sqrt, x.lo, MPFR_RNDD), detail::unary(mpfr_sqrt, x.hi, MPFR_RNDU)};
}

inline Interval sinh(const Interval& x) {
  return {detail::unary(mpfr_sinh, x.lo, MPFR_RNDD), detail::unary(mpfr_sinh, x.hi, MPFR_RNDU)};
}

inline Interval asinh(const Interval& x) {
  return {detail::unary(mpfr_asinh, x.lo, MPFR_RNDD), detail::unary(mpfr_asinh, x.hi, MPFR_RNDU)};
}

inline Interval cosh(const Interval& x) {
  const double a = std::abs(x.lo), b = std::abs(x.hi);
  const double far = std::max(a, b);
  const double near = (x.lo <= 0.0 && x.hi >= 0.0) ? 0.0 : std::min(a, b);
  return {detail::unary(mpfr_cosh, near, MPFR_RNDD), detail::unary(mpfr_cosh, far, MPFR_RNDU)};
}

/// x^n for integer n >= 0.
inline Interval pow(const Interval& x, unsigned n) {
  Interval out(1.0);
  for (unsigned i = 0; i < n; ++i) out *= x;
  if (n % 2 == 0 && x.lo < 0.0 && x.hi > 0.0) out.lo = std::max(out.lo, 0.0);
  return out;
}

/// base^y for base > 0.
inline Interval pow(const Interval& base, const Interval& y) { return exp(y * log(base)); }

inline bool certainly_less(const Interval& x, const Interval& y) { return x.hi < y.lo; }
inline bool certainly_greater(const Interval& x, const Interval& y) { return x.lo > y.hi; }

/// Integer rounding of an interval. `straddles` is set when the interval
/// contains an integer boundary, in which case the conservative side is taken.
struct IntegerBound {
  std::int64_t value = 0;
  bool straddles = false;
};

inline IntegerBound ceil_upper(const Interval& x) {
  return {static_cast<std::int64_t>(std::ceil(x.hi)), std::ceil(x.lo) != std::ceil(x.hi)};
}

inline IntegerBound floor_lower(const Interval& x) {
  return {static_cast<std::int64_t>(std::floor(x.lo)), std::floor(x.lo) != std::floor(x.hi)};
}

}  // namespace aperiodic
