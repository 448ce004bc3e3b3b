// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "aperiodic/error.hpp"

namespace aperiodic {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline BigInt floor_of(const Rational& r) {
  BigInt n = numerator_of(r), d = denominator_of(r);
  BigInt q, rem;
  boost::multiprecision::divide_qr(n, d, q, rem);
  if (rem < 0) q -= 1;
  return q;
}

inline BigInt ceil_of(const Rational& r) { return -floor_of(Rational(-r)); }

inline BigInt pow_int(const BigInt& base, std::uint64_t exponent) {
  BigInt out;
  mpz_pow_ui(out.backend().data(), base.backend().data(), exponent);
  return out;
}

inline Rational pow_rat(const Rational& base, std::uint64_t exponent) {
  return Rational(pow_int(numerator_of(base), exponent), pow_int(denominator_of(base), exponent));
}

/// floor(x^(1/q)) for x >= 0.
inline BigInt iroot(const BigInt& x, std::uint64_t q) {
  if (x < 0) fail(ErrorCode::InvalidArgument, "iroot of negative value");
  if (q == 0) fail(ErrorCode::InvalidArgument, "iroot of order 0");
  BigInt out;
  mpz_root(out.backend().data(), x.backend().data(), q);
  return out;
}

/// Smallest n with 2^n >= r, for r > 0.
inline std::int64_t ceil_log2(const Rational& r) {
  if (r <= 0) fail(ErrorCode::InvalidArgument, "ceil_log2 of non-positive value");
  const BigInt num = numerator_of(r), den = denominator_of(r);
  std::int64_t e = static_cast<std::int64_t>(msb(num)) - static_cast<std::int64_t>(msb(den));
  // 2^e is within a factor 2 of r; settle the boundary exactly.
  auto two_pow_geq = [&](std::int64_t n) {
    // 2^n >= num/den  <=>  2^n * den >= num
    if (n >= 0) return (den << static_cast<unsigned>(n)) >= num;
    return den >= (num << static_cast<unsigned>(-n));
  };
  while (!two_pow_geq(e)) ++e;
  while (two_pow_geq(e - 1)) --e;
  return e;
}

struct RationalBounds {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Rational lower/upper bounds for base^(p/q), tight to 2^-bits.
inline RationalBounds pow_frac_bounds(const BigInt& base, std::uint64_t p, std::uint64_t q,
                                      unsigned bits = 64) {
  const BigInt scale = BigInt(1) << bits;
  const BigInt scaled = pow_int(base, p) * pow_int(scale, q);
  const BigInt root = iroot(scaled, q);
  Rational lo(root, scale);
  if (pow_int(root, q) == scaled) return {lo, lo};
  return {lo, Rational(root + 1, scale)};
}

/// Renders p/q always with an explicit denominator, e.g. "3/1".
inline std::string to_fraction_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Accepts "p", "p/q", "-p/q" and finite decimals "1.25" (converted exactly).
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    value = Rational(BigInt(std::string(whole) + std::string(frac)),
                     pow_int(BigInt(10), frac.size()));
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(BigInt(std::string(text)));
  }
  return negative ? Rational(-value) : value;
}

/// Saturating conversion used by hot loops that only compare against small
/// word-sized quantities.
inline std::int64_t saturate_i64(const BigInt& v) {
  static const BigInt kMax(std::numeric_limits<std::int64_t>::max());
  if (v >= kMax) return std::numeric_limits<std::int64_t>::max();
  if (v <= -kMax) return -std::numeric_limits<std::int64_t>::max();
  return v.convert_to<std::int64_t>();
}

}  // namespace aperiodic
