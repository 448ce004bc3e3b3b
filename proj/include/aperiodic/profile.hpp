// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/interval.hpp"
#include "aperiodic/numeric.hpp"

namespace aperiodic {

class Profile;

/// Finite list of values phi(0..L-1). Past the end the profile either holds
/// the final value (bounded) or grows by `step` per index (unbounded).
struct TableProfile {
  std::vector<Rational> values;
  std::optional<Rational> step;
};

struct LinearProfile {};      // phi(l) = l
struct PowerOfTwoProfile {};  // phi(l) = 2^l

/// phi(l) = base^(exponent * l) with exponent = p/q in lowest terms.
struct ExponentialProfile {
  BigInt base;
  std::uint64_t p = 1;
  std::uint64_t q = 1;
  Rational exponent() const { return Rational(BigInt(p), BigInt(q)); }
};

/// phi(l) = 0 for l <= l0 and inner(l) for l > l0.
struct ThresholdedProfile {
  std::shared_ptr<const Profile> inner;
  std::int64_t l0 = 0;
};

/// A non-decreasing gauge phi : N0 -> [0, inf). Immutable once built.
class Profile {
 public:
  using Kind = std::variant<TableProfile, LinearProfile, PowerOfTwoProfile, ExponentialProfile,
                            ThresholdedProfile>;

  static Profile linear() { return Profile(LinearProfile{}); }
  static Profile power_of_two() { return Profile(PowerOfTwoProfile{}); }

  static Profile table(std::vector<Rational> values, std::optional<Rational> step = std::nullopt) {
    if (values.empty()) fail(ErrorCode::InvalidArgument, "table profile needs at least one value");
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < 0) fail(ErrorCode::InvalidArgument, "table profile values must be non-negative");
      if (j > 0 && values[j] < values[j - 1])
        fail(ErrorCode::InvalidArgument,
             "table profile must be non-decreasing (index " + std::to_string(j) + ")");
    }
    if (step && *step < 0) fail(ErrorCode::InvalidArgument, "table step must be non-negative");
    if (step && *step == 0) step.reset();
    return Profile(TableProfile{std::move(values), std::move(step)});
  }

  static Profile exponential(BigInt base, const Rational& exponent) {
    if (base < 1) fail(ErrorCode::InvalidArgument, "exponential base must be >= 1");
    if (exponent <= 0) fail(ErrorCode::InvalidArgument, "exponent must be positive");
    BigInt p = numerator_of(exponent), q = denominator_of(exponent);
    if (msb(p) > 30 || msb(q) > 30) fail(ErrorCode::InvalidArgument, "exponent numerator/denominator too large");
    return Profile(ExponentialProfile{std::move(base), p.convert_to<std::uint64_t>(),
                                      q.convert_to<std::uint64_t>()});
  }

  static Profile thresholded(Profile inner, std::int64_t l0) {
    if (l0 < 0) fail(ErrorCode::InvalidArgument, "threshold l0 must be >= 0");
    return Profile(ThresholdedProfile{std::make_shared<const Profile>(std::move(inner)), l0});
  }

  const Kind& kind() const { return kind_; }

 private:
  explicit Profile(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// floor(base^(n/q)) from a directed-rounding enclosure; nullopt when the
// enclosure contains an integer boundary.
inline std::optional<BigInt> root_power_floor_enclosed(const BigInt& base, std::uint64_t n, std::uint64_t q) {
  const auto base_bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(base.backend().data(), 2));
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(n / q + 1) * base_bits + 64;
  mpfr_t b, e, y;
  mpfr_inits2(prec, b, e, y, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(b, base.backend().data(), MPFR_RNDN);  // exact at this precision
  BigInt lo, hi;
  mpfr_set_ui(e, n, MPFR_RNDN);
  mpfr_div_ui(e, e, q, MPFR_RNDD);
  mpfr_pow(y, b, e, MPFR_RNDD);
  mpfr_get_z(lo.backend().data(), y, MPFR_RNDD);
  mpfr_set_ui(e, n, MPFR_RNDN);
  mpfr_div_ui(e, e, q, MPFR_RNDU);
  mpfr_pow(y, b, e, MPFR_RNDU);
  mpfr_get_z(hi.backend().data(), y, MPFR_RNDD);
  mpfr_clears(b, e, y, static_cast<mpfr_ptr>(nullptr));
  if (lo != hi) return std::nullopt;
  return lo;
}

// floor(base^(n/q)) for base >= 1, exact.
inline BigInt root_power_floor(const BigInt& base, std::uint64_t n, std::uint64_t q) {
  if (q > 1 && n > 64) {
    if (auto v = root_power_floor_enclosed(base, n, q)) return *v;
  }
  return iroot(pow_int(base, n), q);
}
}  // namespace detail

/// floor(phi(l)), exact.
inline BigInt floor_eval(const Profile& profile, std::int64_t l) {
  if (l < 0) fail(ErrorCode::InvalidArgument, "profile evaluated at negative length");
  return std::visit(
      detail::overloaded{
          [&](const TableProfile& t) -> BigInt {
            const auto size = static_cast<std::int64_t>(t.values.size());
            if (l < size) return floor_of(t.values[static_cast<std::size_t>(l)]);
            if (!t.step) return floor_of(t.values.back());
            return floor_of(t.values.back() + *t.step * Rational(l - size + 1));
          },
          [&](const LinearProfile&) -> BigInt { return BigInt(l); },
          [&](const PowerOfTwoProfile&) -> BigInt { return BigInt(1) << static_cast<unsigned>(l); },
          [&](const ExponentialProfile& e) -> BigInt {
            return detail::root_power_floor(e.base, static_cast<std::uint64_t>(l) * e.p, e.q);
          },
          [&](const ThresholdedProfile& t) -> BigInt {
            return l <= t.l0 ? BigInt(0) : floor_eval(*t.inner, l);
          },
      },
      profile.kind());
}

inline bool is_bounded(const Profile& profile) {
  return std::visit(detail::overloaded{
                        [](const TableProfile& t) { return !t.step.has_value(); },
                        [](const ExponentialProfile& e) { return e.base == 1; },
                        [](const ThresholdedProfile& t) { return is_bounded(*t.inner); },
                        [](const auto&) { return false; },
                    },
                    profile.kind());
}

/// floor(sup phi) for bounded profiles.
inline BigInt bounded_floor_sup(const Profile& profile) {
  return std::visit(detail::overloaded{
                        [](const TableProfile& t) { return floor_of(t.values.back()); },
                        [](const ExponentialProfile&) { return BigInt(1); },
                        [](const ThresholdedProfile& t) { return bounded_floor_sup(*t.inner); },
                        [](const auto&) -> BigInt {
                          fail(ErrorCode::InvalidArgument, "profile is unbounded");
                        },
                    },
                    profile.kind());
}

namespace detail {

// Least j >= from with floor(phi(j)) >= s, found by galloping then bisection.
inline std::int64_t least_reaching(const Profile& profile, const BigInt& s, std::int64_t from) {
  if (floor_eval(profile, from) >= s) return from;
  std::int64_t lo = from, step = 1, hi = from + 1;
  while (floor_eval(profile, hi) < s) {
    lo = hi;
    step *= 2;
    hi = from + step;
  }
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (floor_eval(profile, mid) >= s)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace detail

/// l(s) = min{ j >= 0 : phi(j) >= s }, or nullopt when the bounded profile
/// never reaches s. Since s is an integer, phi(j) >= s iff floor(phi(j)) >= s.
inline std::optional<std::int64_t> right_inverse_or_none(const Profile& profile, const BigInt& s) {
  if (s < 1) fail(ErrorCode::InvalidArgument, "right inverse is defined for s >= 1");
  if (is_bounded(profile) && bounded_floor_sup(profile) < s) return std::nullopt;
  return std::visit(detail::overloaded{
                        [&](const LinearProfile&) -> std::int64_t { return s.convert_to<std::int64_t>(); },
                        [&](const PowerOfTwoProfile&) -> std::int64_t {
                          return static_cast<std::int64_t>(ceil_log2(Rational(s)));
                        },
                        [&](const auto&) -> std::int64_t { return detail::least_reaching(profile, s, 0); },
                    },
                    profile.kind());
}

inline std::int64_t right_inverse(const Profile& profile, const BigInt& s) {
  auto out = right_inverse_or_none(profile, s);
  if (!out) fail(ErrorCode::BoundedProfile, "profile never reaches " + s.str());
  return *out;
}

/// l(1..s_max) precomputed; entries are nullopt where a bounded profile never
/// reaches s. Index 0 is unused.
class RightInverseTable {
 public:
  RightInverseTable(const Profile& profile, std::int64_t s_max) : ell_(static_cast<std::size_t>(s_max) + 1) {
    std::int64_t from = 0;
    for (std::int64_t s = 1; s <= s_max; ++s) {
      const BigInt target(s);
      if (is_bounded(profile) && bounded_floor_sup(profile) < target) break;
      from = detail::least_reaching(profile, target, from);
      ell_[static_cast<std::size_t>(s)] = from;
    }
  }

  std::int64_t s_max() const { return static_cast<std::int64_t>(ell_.size()) - 1; }
  const std::optional<std::int64_t>& operator()(std::int64_t s) const {
    return ell_.at(static_cast<std::size_t>(s));
  }

 private:
  std::vector<std::optional<std::int64_t>> ell_;
};

/// floor(phi(0..l_max)), saturated to int64.
inline std::vector<std::int64_t> floor_table(const Profile& profile, std::int64_t l_max) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(l_max) + 1);
  for (std::int64_t l = 0; l <= l_max; ++l) {
    // Once saturated the value stays saturated; skip the bignum work.
    if (!out.empty() && out.back() == std::numeric_limits<std::int64_t>::max()) {
      out.push_back(out.back());
      continue;
    }
    out.push_back(saturate_i64(floor_eval(profile, l)));
  }
  return out;
}

/// phi(x) for real x >= 0, as an enclosure. Table profiles are extended as
/// right-continuous step functions phi(floor x).
inline Interval eval_real(const Profile& profile, const Interval& x) {
  if (x.lo < 0.0) fail(ErrorCode::InvalidArgument, "profile evaluated at negative argument");
  return std::visit(
      detail::overloaded{
          [&](const TableProfile& t) -> Interval {
            auto at = [&](double v) {
              auto l = static_cast<std::int64_t>(std::floor(v));
              const auto size = static_cast<std::int64_t>(t.values.size());
              Rational r = l < size ? t.values[static_cast<std::size_t>(l)]
                           : t.step ? Rational(t.values.back() + *t.step * Rational(l - size + 1))
                                    : t.values.back();
              return Interval::from_rational(r);
            };
            return hull(at(x.lo), at(x.hi));
          },
          [&](const LinearProfile&) { return x; },
          [&](const PowerOfTwoProfile&) { return exp(x * Interval::ln2()); },
          [&](const ExponentialProfile& e) {
            return exp(x * Interval::from_rational(e.exponent()) * log(Interval::from_integer(e.base)));
          },
          [&](const ThresholdedProfile& t) -> Interval {
            const double cut = static_cast<double>(t.l0);
            if (x.hi <= cut) return Interval(0.0);
            if (x.lo > cut) return eval_real(*t.inner, x);
            return hull(Interval(0.0), eval_real(*t.inner, x));
          },
      },
      profile.kind());
}

// ---------------------------------------------------------------------------
// Textual form
//
//   profile := "linear" | "pow2"
//            | "exp:k=<int>,delta=<rational>"
//            | "thresh:l0=<int>;" profile
//            | "table:" rational ("," rational)* [";step=" rational]
//
// Rationals accept "p", "p/q" and finite decimals.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kProfileGrammar =
    "linear | pow2 | exp:k=<int>,delta=<p/q> | thresh:l0=<int>;<profile> | "
    "table:<v0>,<v1>,...[;step=<p/q>]";

namespace detail {

[[noreturn]] inline void profile_parse_error(std::string_view full, std::size_t column,
                                             const std::string& what) {
  fail(ErrorCode::Parse, "invalid profile \"" + std::string(full) + "\" at column " +
                             std::to_string(column + 1) + ": " + what + " (expected " +
                             std::string(kProfileGrammar) + ")");
}

inline std::int64_t parse_int_field(std::string_view full, std::size_t offset, std::string_view text) {
  auto r = parse_rational(text);
  if (!r || denominator_of(*r) != 1) profile_parse_error(full, offset, "expected an integer");
  return numerator_of(*r).convert_to<std::int64_t>();
}

inline Profile parse_profile_at(std::string_view full, std::size_t offset) {
  std::string_view text = full.substr(offset);
  auto starts = [&](std::string_view p) { return text.substr(0, p.size()) == p; };
  if (text == "linear") return Profile::linear();
  if (text == "pow2") return Profile::power_of_two();
  if (starts("exp:")) {
    std::size_t pos = 4;
    if (text.substr(pos, 2) != "k=") profile_parse_error(full, offset + pos, "expected \"k=\"");
    pos += 2;
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) profile_parse_error(full, offset + pos, "expected \",delta=\"");
    std::int64_t k = parse_int_field(full, offset + pos, text.substr(pos, comma - pos));
    if (k < 1) profile_parse_error(full, offset + pos, "base must be >= 1");
    pos = comma + 1;
    if (text.substr(pos, 6) != "delta=") profile_parse_error(full, offset + pos, "expected \"delta=\"");
    pos += 6;
    auto delta = parse_rational(text.substr(pos));
    if (!delta || *delta <= 0) profile_parse_error(full, offset + pos, "expected a positive rational");
    return Profile::exponential(BigInt(k), *delta);
  }
  if (starts("thresh:")) {
    std::size_t pos = 7;
    if (text.substr(pos, 3) != "l0=") profile_parse_error(full, offset + pos, "expected \"l0=\"");
    pos += 3;
    auto semi = text.find(';', pos);
    if (semi == std::string_view::npos) profile_parse_error(full, offset + pos, "expected \";<profile>\"");
    std::int64_t l0 = parse_int_field(full, offset + pos, text.substr(pos, semi - pos));
    if (l0 < 0) profile_parse_error(full, offset + pos, "l0 must be >= 0");
    return Profile::thresholded(parse_profile_at(full, offset + semi + 1), l0);
  }
  if (starts("table:")) {
    std::size_t pos = 6;
    auto semi = text.find(';', pos);
    std::string_view list = text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
    std::vector<Rational> values;
    std::size_t at = 0;
    while (true) {
      auto comma = list.find(',', at);
      auto item = list.substr(at, comma == std::string_view::npos ? std::string_view::npos : comma - at);
      auto v = parse_rational(item);
      if (!v || *v < 0) profile_parse_error(full, offset + pos + at, "expected a non-negative rational");
      if (!values.empty() && *v < values.back())
        profile_parse_error(full, offset + pos + at, "table values must be non-decreasing");
      values.push_back(*v);
      if (comma == std::string_view::npos) break;
      at = comma + 1;
    }
    std::optional<Rational> step;
    if (semi != std::string_view::npos) {
      std::size_t opt = semi + 1;
      if (text.substr(opt, 5) != "step=") profile_parse_error(full, offset + opt, "expected \"step=\"");
      auto s = parse_rational(text.substr(opt + 5));
      if (!s || *s < 0) profile_parse_error(full, offset + opt + 5, "expected a non-negative rational");
      step = *s;
    }
    return Profile::table(std::move(values), std::move(step));
  }
  profile_parse_error(full, offset, "unknown profile kind");
}

inline std::string rational_text(const Rational& r) {
  return denominator_of(r) == 1 ? numerator_of(r).str() : to_fraction_string(r);
}

}  // namespace detail

inline Profile parse_profile(std::string_view text) { return detail::parse_profile_at(text, 0); }

inline std::string format_profile(const Profile& profile) {
  return std::visit(
      detail::overloaded{
          [](const LinearProfile&) -> std::string { return "linear"; },
          [](const PowerOfTwoProfile&) -> std::string { return "pow2"; },
          [](const ExponentialProfile& e) -> std::string {
            return "exp:k=" + e.base.str() + ",delta=" + detail::rational_text(e.exponent());
          },
          [](const ThresholdedProfile& t) -> std::string {
            return "thresh:l0=" + std::to_string(t.l0) + ";" + format_profile(*t.inner);
          },
          [](const TableProfile& t) -> std::string {
            std::string out = "table:";
            for (std::size_t j = 0; j < t.values.size(); ++j) {
              if (j) out += ",";
              out += detail::rational_text(t.values[j]);
            }
            if (t.step) out += ";step=" + detail::rational_text(*t.step);
            return out;
          },
      },
      profile.kind());
}

}  // namespace aperiodic
