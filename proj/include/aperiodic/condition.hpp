// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/profile.hpp"

namespace aperiodic {

/// Enclosure of S = sum_{l>=1} (floor phi(l) - floor phi(l-1)) / c^l.
struct IncrementSeries {
  enum class Kind { Exact, Bounded, Divergent };
  Kind kind = Kind::Exact;
  Rational lo;  // == hi when exact
  Rational hi;
  std::int64_t terms = 0;  // explicit terms summed before the tail bound
  Rational tail_upper;     // tail bound added to hi; zero for exact series

  static IncrementSeries exact(Rational v) { return {Kind::Exact, v, v, 0, Rational(0)}; }
  static IncrementSeries divergent() { return {Kind::Divergent, Rational(0), Rational(0), 0, Rational(0)}; }
};

namespace detail {

// sum_{l=from}^{to} (F(l) - F(l-1)) / c^l with F = floor phi, exactly.
inline Rational increment_partial_sum(const Profile& profile, const Rational& c, std::int64_t from,
                                      std::int64_t to) {
  if (to < from) return Rational(0);
  // With c = a/b the sum is (sum_l D_l b^l a^(to-l)) / a^to; Horner in a.
  const BigInt a = numerator_of(c), b = denominator_of(c);
  BigInt acc = 0, b_pow = pow_int(b, static_cast<std::uint64_t>(from));
  BigInt prev = floor_eval(profile, from - 1);
  for (std::int64_t l = from; l <= to; ++l) {
    BigInt cur = floor_eval(profile, l);
    acc = acc * a + (cur - prev) * b_pow;
    b_pow *= b;
    prev = std::move(cur);
  }
  return Rational(acc, pow_int(a, static_cast<std::uint64_t>(to)));
}

// Rational A >= base^(p/q) with A < c, or nullopt when base^(p/q) >= c.
inline std::optional<Rational> growth_rate_below(const BigInt& base, std::uint64_t p, std::uint64_t q,
                                                 const Rational& c) {
  for (unsigned bits = 32; bits <= 4096; bits *= 2) {
    auto b = pow_frac_bounds(base, p, q, bits);
    if (b.hi < c) return b.hi;
    if (b.lo >= c) return std::nullopt;
  }
  fail(ErrorCode::PrecisionExhausted, "cannot separate growth rate from c");
}

inline IncrementSeries increment_series(const Profile& profile, const Rational& c, std::int64_t terms);

inline IncrementSeries exponential_series(const ExponentialProfile& e, const Profile& profile, const Rational& c,
                                          std::int64_t terms) {
  auto rate = growth_rate_below(e.base, e.p, e.q, c);
  if (!rate) return IncrementSeries::divergent();
  const Rational partial = increment_partial_sum(profile, c, 1, terms);
  // Summation by parts with floor phi(l) <= A^l and A < c:
  //   sum_{l>N} D_l c^-l <= (1 - 1/c) sum_{l>N} (A/c)^l.
  const Rational ratio = *rate / c;
  const Rational tail = (Rational(1) - Rational(1) / c) * pow_rat(ratio, static_cast<std::uint64_t>(terms + 1)) /
                        (Rational(1) - ratio);
  return {IncrementSeries::Kind::Bounded, partial, partial + tail, terms, tail};
}

inline IncrementSeries table_series(const TableProfile& t, const Profile& profile, const Rational& c) {
  const auto size = static_cast<std::int64_t>(t.values.size());
  if (!t.step) return IncrementSeries::exact(increment_partial_sum(profile, c, 1, size));
  // With step a/b the floor increments past the table repeat with period b.
  const BigInt period_big = denominator_of(*t.step);
  if (period_big > 1'000'000)
    fail(ErrorCode::InvalidArgument, "table step denominator too large for a closed-form sum");
  const auto period = period_big.convert_to<std::int64_t>();
  const Rational head = increment_partial_sum(profile, c, 1, size - 1);
  const Rational block = increment_partial_sum(profile, c, size, size + period - 1);
  const Rational decay = Rational(1) / pow_rat(c, static_cast<std::uint64_t>(period));
  return IncrementSeries::exact(head + block / (Rational(1) - decay));
}

// Sum starting at l = 1 for any profile, with `terms` explicit terms for the
// non-closed-form pieces.
inline IncrementSeries increment_series(const Profile& profile, const Rational& c, std::int64_t terms) {
  return std::visit(
      overloaded{
          [&](const LinearProfile&) { return IncrementSeries::exact(Rational(1) / (c - 1)); },
          [&](const PowerOfTwoProfile&) {
            // sum 2^(l-1) / c^l = 1/(c-2), divergent for c <= 2.
            return c > 2 ? IncrementSeries::exact(Rational(1) / (c - 2)) : IncrementSeries::divergent();
          },
          [&](const TableProfile& t) { return table_series(t, profile, c); },
          [&](const ExponentialProfile& e) { return exponential_series(e, profile, c, terms); },
          [&](const ThresholdedProfile& t) {
            // Below the threshold F = 0; at l0+1 it jumps to F_inner(l0+1); the
            // inner increments follow. So S = F_in(l0+1)/c^(l0+1) + S_in - sum_{l<=l0+1} D_in.
            const Profile& inner = *t.inner;
            auto s_in = increment_series(inner, c, std::max(terms, t.l0 + 1));
            if (s_in.kind == IncrementSeries::Kind::Divergent) return s_in;
            const Rational jump = Rational(floor_eval(inner, t.l0 + 1)) /
                                  pow_rat(c, static_cast<std::uint64_t>(t.l0 + 1));
            const Rational shift = jump - increment_partial_sum(inner, c, 1, t.l0 + 1);
            s_in.lo += shift;
            s_in.hi += shift;
            return s_in;
          },
      },
      profile.kind());
}

}  // namespace detail

enum class ConditionStatus { Satisfied, Unsatisfied, Unknown };

inline std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Satisfied: return "satisfied";
    case ConditionStatus::Unsatisfied: return "unsatisfied";
    case ConditionStatus::Unknown: return "unknown";
  }
  return "?";
}

/// k - floor phi(0) - sum_{l>=1} (floor phi(l) - floor phi(l-1)) / c^l  >=  c.
struct ConditionReport {
  enum class Tail { ClosedForm, Truncated, Divergent };

  int k = 0;
  Profile profile = Profile::linear();
  Rational c;
  Tail tail = Tail::ClosedForm;
  std::int64_t terms = 0;  // for Truncated
  Rational tail_upper;     // for Truncated
  // LHS - c lies in [margin_lo, margin_hi]; equal for closed forms. Meaningless
  // when the series diverges (the left side is -infinity).
  Rational margin_lo;
  Rational margin_hi;
  ConditionStatus status = ConditionStatus::Unknown;

  bool satisfied() const { return status == ConditionStatus::Satisfied; }
  bool exact() const { return tail == Tail::ClosedForm; }
  std::optional<Rational> exact_margin() const {
    if (!exact()) return std::nullopt;
    return margin_lo;
  }
};

inline std::string to_string(ConditionReport::Tail t) {
  switch (t) {
    case ConditionReport::Tail::ClosedForm: return "closed_form";
    case ConditionReport::Tail::Truncated: return "truncated_with_bound";
    case ConditionReport::Tail::Divergent: return "divergent";
  }
  return "?";
}

struct ConditionOptions {
  std::int64_t initial_terms = 32;
  std::int64_t max_terms = 4096;
};

inline ConditionReport condition_3_2(int k, const Profile& profile, const Rational& c,
                                     const ConditionOptions& options = {}) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "k must be at least 2");
  if (!(c > 1 && c < k))
    fail(ErrorCode::COutOfRange, "c must satisfy 1 < c < k, got " + to_fraction_string(c));
  ConditionReport report;
  report.k = k;
  report.profile = profile;
  report.c = c;
  const Rational base = Rational(k) - Rational(floor_eval(profile, 0)) - c;
  for (std::int64_t terms = options.initial_terms;; terms *= 2) {
    auto series = detail::increment_series(profile, c, terms);
    switch (series.kind) {
      case IncrementSeries::Kind::Divergent:
        report.tail = ConditionReport::Tail::Divergent;
        report.status = ConditionStatus::Unsatisfied;
        return report;
      case IncrementSeries::Kind::Exact:
        report.tail = ConditionReport::Tail::ClosedForm;
        report.margin_lo = report.margin_hi = base - series.lo;
        report.status = report.margin_lo >= 0 ? ConditionStatus::Satisfied : ConditionStatus::Unsatisfied;
        return report;
      case IncrementSeries::Kind::Bounded:
        report.tail = ConditionReport::Tail::Truncated;
        report.terms = series.terms;
        report.tail_upper = series.tail_upper;
        report.margin_lo = base - series.hi;
        report.margin_hi = base - series.lo;
        if (report.margin_lo >= 0) {
          report.status = ConditionStatus::Satisfied;
          return report;
        }
        if (report.margin_hi < 0) {
          report.status = ConditionStatus::Unsatisfied;
          return report;
        }
        if (terms * 2 > options.max_terms) {
          report.status = ConditionStatus::Unknown;
          return report;
        }
        break;
    }
  }
}

/// Least l0 such that phi = 0 up to l0 and k^(delta l) beyond satisfies the
/// condition with this c. Requires k^delta < c < k.
inline std::int64_t exists_threshold_for_exponential(int k, const Rational& delta, const Rational& c,
                                                     std::int64_t max_l0 = 100000) {
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (!(c > 1 && c < k)) fail(ErrorCode::COutOfRange, "c must satisfy 1 < c < k");
  const auto p = numerator_of(delta).convert_to<std::uint64_t>();
  const auto q = denominator_of(delta).convert_to<std::uint64_t>();
  // k^delta < c  <=>  k^p < c^q.
  if (!(Rational(pow_int(BigInt(k), p)) < pow_rat(c, q)))
    fail(ErrorCode::COutOfRange, "c must exceed k^delta");
  const Profile inner = Profile::exponential(BigInt(k), delta);
  for (std::int64_t l0 = 0; l0 <= max_l0; ++l0) {
    if (condition_3_2(k, Profile::thresholded(inner, l0), c).satisfied()) return l0;
  }
  fail(ErrorCode::BudgetExceeded, "no threshold found up to " + std::to_string(max_l0));
}

}  // namespace aperiodic
