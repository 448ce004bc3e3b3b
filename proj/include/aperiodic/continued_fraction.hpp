// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"

namespace aperiodic {

/// [a0; a1, a2, ...] with an optional periodic tail repeated forever.
class ContinuedFraction {
 public:
  ContinuedFraction(std::vector<BigInt> head, std::vector<BigInt> period = {})
      : head_(std::move(head)), period_(std::move(period)) {
    if (head_.empty()) fail(ErrorCode::InvalidArgument, "continued fraction needs a0");
    for (std::size_t j = 1; j < head_.size() + period_.size(); ++j)
      if (term(j) < 1) fail(ErrorCode::InvalidArgument, "partial quotients after a0 must be positive");
  }

  /// Parses "a0;a1,a2,..." with an optional "(p1,p2,...)" periodic suffix,
  /// e.g. "1;(1)" for the golden ratio or "0;(2)" for sqrt(2) - 1.
  static ContinuedFraction parse(std::string_view text) {
    auto bad = [&](std::size_t pos, const std::string& why) -> ContinuedFraction {
      fail(ErrorCode::Parse, "continued fraction, column " + std::to_string(pos + 1) + ": " + why);
    };
    std::vector<BigInt> head, period;
    std::size_t pos = 0;
    auto read_int = [&](bool allow_sign) -> std::optional<BigInt> {
      const std::size_t start = pos;
      if (allow_sign && pos < text.size() && text[pos] == '-') ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == start || (text[start] == '-' && pos == start + 1)) return std::nullopt;
      return BigInt(std::string(text.substr(start, pos - start)));
    };
    auto a0 = read_int(true);
    if (!a0) return bad(pos, "expected integer a0");
    head.push_back(*a0);
    if (pos == text.size()) return ContinuedFraction(head);
    if (text[pos] != ';') return bad(pos, "expected ';'");
    if (++pos == text.size()) return bad(pos, "expected positive integer after ';'");
    bool in_period = false;
    while (pos < text.size()) {
      if (!in_period && text[pos] == '(') {
        in_period = true;
        ++pos;
      }
      auto a = read_int(false);
      if (!a) return bad(pos, "expected positive integer");
      if (*a < 1) return bad(pos, "partial quotients must be positive");
      (in_period ? period : head).push_back(*a);
      if (pos == text.size()) {
        if (in_period) return bad(pos, "missing ')'");
        break;
      }
      if (in_period && text[pos] == ')') {
        if (++pos != text.size()) return bad(pos, "trailing characters after period");
        break;
      }
      if (text[pos] != ',') return bad(pos, "expected ','");
      ++pos;
      if (pos == text.size()) return bad(pos, "trailing ','");
    }
    return ContinuedFraction(head, period);
  }

  bool periodic() const { return !period_.empty(); }
  /// Number of terms, or nullopt when the expansion is infinite.
  std::optional<std::size_t> size() const {
    if (periodic()) return std::nullopt;
    return head_.size();
  }
  bool has_term(std::size_t n) const { return periodic() || n < head_.size(); }
  const BigInt& term(std::size_t n) const {
    if (n < head_.size()) return head_[n];
    if (!periodic()) fail(ErrorCode::DepthExceeded, "continued fraction has only " + std::to_string(head_.size()) + " terms");
    return period_[(n - head_.size()) % period_.size()];
  }

  std::string str() const {
    std::string out = head_.front().str();
    std::vector<std::string> rest;
    for (std::size_t j = 1; j < head_.size(); ++j) rest.push_back(head_[j].str());
    std::string tail;
    for (std::size_t j = 0; j < rest.size(); ++j) tail += (j ? "," : "") + rest[j];
    if (periodic()) {
      std::string per;
      for (std::size_t j = 0; j < period_.size(); ++j) per += (j ? "," : "") + period_[j].str();
      tail += (tail.empty() ? "" : ",") + ("(" + per + ")");
    }
    return tail.empty() ? out : out + ";" + tail;
  }

 private:
  std::vector<BigInt> head_;
  std::vector<BigInt> period_;
};

struct Convergent {
  BigInt p;
  BigInt q;
};

/// p_n/q_n for n = 0..depth-1.
inline std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t depth) {
  if (depth == 0) fail(ErrorCode::InvalidArgument, "depth must be positive");
  if (!cf.has_term(depth - 1))
    fail(ErrorCode::DepthExceeded, "depth " + std::to_string(depth) + " exceeds the " +
                                       std::to_string(*cf.size()) + " available terms");
  std::vector<Convergent> out;
  BigInt p_prev = 1, q_prev = 0, p = cf.term(0), q = 1;
  out.push_back({p, q});
  for (std::size_t n = 1; n < depth; ++n) {
    const BigInt& a = cf.term(n);
    BigInt p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({p, q});
  }
  return out;
}

/// Closed rational interval.
struct RationalInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

namespace detail {

// Enclosure of alpha from consecutive convergents, or the exact value for a
// finite expansion that has run out of terms.
struct AlphaBracket {
  RationalInterval alpha;
  bool exact = false;
};

inline AlphaBracket bracket_alpha(const ContinuedFraction& cf, std::size_t depth) {
  if (!cf.has_term(depth)) {
    const auto all = convergents(cf, *cf.size());
    Rational v(all.back().p, all.back().q);
    return {{v, v}, true};
  }
  const auto c = convergents(cf, depth + 1);
  Rational x(c[depth - 1].p, c[depth - 1].q), y(c[depth].p, c[depth].q);
  if (x > y) std::swap(x, y);
  return {{x, y}, false};
}

inline Rational dist_to_integer(const Rational& x) {
  const Rational frac = x - Rational(floor_of(x));
  return frac <= Rational(1, 2) ? frac : Rational(1) - frac;
}

// Range of dist(x, Z) over x in [lo, hi], assuming hi - lo < 1/2.
inline RationalInterval dist_range(const Rational& lo, const Rational& hi) {
  const Rational dlo = dist_to_integer(lo), dhi = dist_to_integer(hi);
  RationalInterval out{dlo < dhi ? dlo : dhi, dlo < dhi ? dhi : dlo};
  if (floor_of(lo) != floor_of(hi) || lo == Rational(floor_of(lo))) out.lo = 0;  // an integer inside
  const Rational shift(1, 2);
  if (floor_of(lo - shift) != floor_of(hi - shift) || lo - shift == Rational(floor_of(lo - shift)))
    out.hi = shift;  // a half-integer inside
  return out;
}

// Enclosure of q * dist(q alpha, Z).
inline RationalInterval badness_at(const AlphaBracket& a, std::int64_t q) {
  const Rational qq(q);
  auto d = dist_range(qq * a.alpha.lo, qq * a.alpha.hi);
  return {qq * d.lo, qq * d.hi};
}

}  // namespace detail

struct BadnessResult {
  RationalInterval value;  // min_{q <= Q} q ||q alpha||
  std::int64_t argmin = 0;
  std::int64_t horizon = 0;
  std::size_t depth_used = 0;  // convergent depth of the alpha bracket
};

/// min over 1 <= q <= Q of q * ||q alpha||, decided exactly by refining the
/// enclosure of alpha until the minimiser is separated from every other q.
inline BadnessResult badness_profile(const ContinuedFraction& cf, std::int64_t Q) {
  if (Q < 1) fail(ErrorCode::InvalidArgument, "horizon Q must be at least 1");
  // Start with a bracket whose width is far below 1/Q^2.
  const Rational target = Rational(1) / (Rational(Q) * Rational(Q) * Rational(BigInt(1) << 40));
  std::size_t depth = 1;
  while (true) {
    auto a = detail::bracket_alpha(cf, depth);
    if (a.exact || a.alpha.hi - a.alpha.lo < target) break;
    ++depth;
  }
  for (int attempt = 0; attempt < 32; ++attempt, depth *= 2) {
    const auto a = detail::bracket_alpha(cf, depth);
    RationalInterval best;
    std::int64_t best_q = 0;
    std::optional<Rational> rival_lo;  // min lower bound over all q != best_q
    for (std::int64_t q = 1; q <= Q; ++q) {
      auto v = detail::badness_at(a, q);
      if (best_q == 0 || v.hi < best.hi) {
        if (best_q != 0 && (!rival_lo || best.lo < *rival_lo)) rival_lo = best.lo;
        best = v;
        best_q = q;
      } else if (!rival_lo || v.lo < *rival_lo) {
        rival_lo = v.lo;
      }
    }
    // Ties can only happen for rational alpha, where values are exact and the
    // smallest q is kept.
    if (!rival_lo || best.hi < *rival_lo || (a.exact && best.hi <= *rival_lo)) return {best, best_q, Q, depth};
  }
  fail(ErrorCode::PrecisionExhausted, "continued fraction terms insufficient to decide the minimum");
}

/// q_n * ||q_n alpha|| for the n-th convergent denominator.
inline RationalInterval convergent_badness(const ContinuedFraction& cf, std::size_t n) {
  const auto c = convergents(cf, n + 1);
  const BigInt& q = c[n].q;
  for (std::size_t depth = n + 4;; depth *= 2) {
    const auto a = detail::bracket_alpha(cf, depth);
    auto d = detail::dist_range(Rational(q) * a.alpha.lo, Rational(q) * a.alpha.hi);
    RationalInterval v{Rational(q) * d.lo, Rational(q) * d.hi};
    if (a.exact || v.hi - v.lo < Rational(1, 1'000'000'000'000LL)) return v;
  }
}

struct FcVerdict {
  bool aperiodic = true;                // no q <= horizon with q ||q alpha|| < c
  std::optional<std::int64_t> witness;  // least violating q
  std::int64_t horizon = 0;
};

/// Bounded-horizon check of q ||q alpha|| >= c for all 1 <= q <= Q. A false
/// verdict is a proof; a true verdict only covers the horizon.
inline FcVerdict is_Fc_aperiodic_at_zero(const ContinuedFraction& cf, const Rational& c, std::int64_t Q) {
  if (Q < 1) fail(ErrorCode::InvalidArgument, "horizon Q must be at least 1");
  FcVerdict out;
  out.horizon = Q;
  const Rational target = Rational(1) / (Rational(Q) * Rational(Q) * Rational(BigInt(1) << 40));
  std::size_t depth = 1;
  while (true) {
    auto a = detail::bracket_alpha(cf, depth);
    if (a.exact || a.alpha.hi - a.alpha.lo < target) break;
    ++depth;
  }
  auto a = detail::bracket_alpha(cf, depth);
  for (std::int64_t q = 1; q <= Q; ++q) {
    auto v = detail::badness_at(a, q);
    while (!(v.hi < c) && !(v.lo >= c)) {
      if (a.exact || depth > (std::size_t{1} << 24))
        fail(ErrorCode::PrecisionExhausted, "cannot decide q ||q alpha|| against c at q = " + std::to_string(q));
      depth *= 2;
      a = detail::bracket_alpha(cf, depth);
      v = detail::badness_at(a, q);
    }
    if (v.hi < c) {
      out.aperiodic = false;
      out.witness = q;
      return out;
    }
  }
  return out;
}

}  // namespace aperiodic
