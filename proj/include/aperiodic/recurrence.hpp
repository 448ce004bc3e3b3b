// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/word.hpp"

namespace aperiodic {

/// nullopt stands for "not attained within the finite word", which callers
/// treat as imposing no constraint.
using RecurrenceTime = std::optional<std::int64_t>;

/// R_w^i(l): least s >= 1 with [w(i+s)..w(i+s+l)] = [w(i)..w(i+l)].
inline RecurrenceTime recurrence_time_at(const FiniteWord& w, std::int64_t i, std::int64_t l) {
  const auto m = static_cast<std::int64_t>(w.length());
  if (i < 1 || l < 0 || i + l > m)
    fail(ErrorCode::OutOfBounds, "base window [" + std::to_string(i) + ", " + std::to_string(i + l) +
                                     "] outside word of length " + std::to_string(m));
  auto sym = w.symbols();
  for (std::int64_t s = 1; i + s + l <= m; ++s) {
    bool equal = true;
    for (std::int64_t j = 0; j <= l && equal; ++j)
      equal = sym[static_cast<std::size_t>(i - 1 + j)] == sym[static_cast<std::size_t>(i - 1 + s + j)];
    if (equal) return s;
  }
  return std::nullopt;
}

/// Longest run of w(j) = w(j+s) over all j, for each shift 1 <= s < m.
/// Entry s is the largest l+1 such that some window of l+1 symbols recurs at
/// shift s. Index 0 is unused.
inline std::vector<std::int64_t> longest_shift_agreement(const FiniteWord& w) {
  const auto m = static_cast<std::int64_t>(w.length());
  auto sym = w.symbols();
  std::vector<std::int64_t> best(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)), 0);
  for (std::int64_t s = 1; s < m; ++s) {
    std::int64_t run = 0, top = 0;
    for (std::int64_t j = 0; j + s < m; ++j) {
      run = sym[static_cast<std::size_t>(j)] == sym[static_cast<std::size_t>(j + s)] ? run + 1 : 0;
      top = std::max(top, run);
    }
    best[static_cast<std::size_t>(s)] = top;
  }
  return best;
}

/// R_w(0..l_max) restricted to the windows of a finite word.
class RecurrenceTable {
 public:
  explicit RecurrenceTable(std::vector<RecurrenceTime> values) : values_(std::move(values)) {}

  std::int64_t l_max() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  const RecurrenceTime& operator()(std::int64_t l) const { return values_.at(static_cast<std::size_t>(l)); }
  bool attained(std::int64_t l) const { return (*this)(l).has_value(); }
  const std::vector<RecurrenceTime>& values() const { return values_; }

 private:
  std::vector<RecurrenceTime> values_;
};

inline RecurrenceTable min_recurrence_time(const FiniteWord& w, std::int64_t l_max) {
  const auto m = static_cast<std::int64_t>(w.length());
  if (l_max < 0 || l_max >= m)
    fail(ErrorCode::OutOfBounds, "l_max must lie in [0, length(w)), got " + std::to_string(l_max));
  const auto agreement = longest_shift_agreement(w);
  std::vector<RecurrenceTime> out(static_cast<std::size_t>(l_max) + 1);
  std::int64_t filled = 0;  // out[0..filled) are settled
  for (std::int64_t s = 1; s < m && filled <= l_max; ++s) {
    // Shift s realizes every l with l+1 <= agreement[s].
    const std::int64_t reach = std::min(agreement[static_cast<std::size_t>(s)] - 1, l_max);
    for (; filled <= reach; ++filled) out[static_cast<std::size_t>(filled)] = s;
  }
  return RecurrenceTable(std::move(out));
}

/// Overlap-free recurrence of the initial window: least s > l with
/// [w(1+s)..w(1+s+l)] = [w(1)..w(1+l)].
inline RecurrenceTime overlap_recurrence(const FiniteWord& w, std::int64_t l) {
  const auto m = static_cast<std::int64_t>(w.length());
  if (l < 0 || l + 1 > m)
    fail(ErrorCode::OutOfBounds, "initial window of length " + std::to_string(l + 1) +
                                     " exceeds word of length " + std::to_string(m));
  auto sym = w.symbols();
  for (std::int64_t s = l + 1; s + l < m; ++s) {
    if (std::equal(sym.begin(), sym.begin() + l + 1, sym.begin() + s)) return s;
  }
  return std::nullopt;
}

/// Symbols v(-r..r) of a word viewed around position 0.
class CenteredWindow {
 public:
  CenteredWindow(std::int64_t radius, std::vector<FiniteWord::Symbol> symbols)
      : radius_(radius), symbols_(std::move(symbols)) {
    if (radius < 0 || symbols_.size() != static_cast<std::size_t>(2 * radius + 1))
      fail(ErrorCode::InvalidArgument, "centered window needs 2r+1 symbols");
  }

  /// The window of radius r centred at 1-based position `center` of w.
  static CenteredWindow around(const FiniteWord& w, std::int64_t center, std::int64_t radius) {
    const auto m = static_cast<std::int64_t>(w.length());
    if (radius < 0 || center - radius < 1 || center + radius > m)
      fail(ErrorCode::OutOfBounds, "window of radius " + std::to_string(radius) + " around " +
                                       std::to_string(center) + " exceeds word of length " +
                                       std::to_string(m));
    auto sym = w.symbols();
    return CenteredWindow(radius, {sym.begin() + (center - radius - 1), sym.begin() + (center + radius)});
  }

  std::int64_t radius() const { return radius_; }
  FiniteWord::Symbol operator[](std::int64_t j) const {
    return symbols_.at(static_cast<std::size_t>(j + radius_));
  }

 private:
  std::int64_t radius_;
  std::vector<FiniteWord::Symbol> symbols_;
};

/// d(u, v) = 2^-a with a the largest agreement radius around 0.
struct MetricValue {
  Rational distance;
  /// Largest i with u(j) = v(j) for |j| <= i; nullopt when they differ at 0.
  std::optional<std::int64_t> agreement;
  /// True when the windows agree everywhere: the distance is reported as 0
  /// but is only known to be at most 2^-radius.
  bool unresolved = false;
  std::int64_t radius = 0;
};

inline MetricValue word_metric(const CenteredWindow& u, const CenteredWindow& v) {
  if (u.radius() != v.radius())
    fail(ErrorCode::UnequalRadii, "windows have radii " + std::to_string(u.radius()) + " and " +
                                      std::to_string(v.radius()));
  const std::int64_t r = u.radius();
  if (u[0] != v[0]) return {Rational(1), std::nullopt, false, r};
  std::int64_t a = 0;
  while (a < r && u[a + 1] == v[a + 1] && u[-(a + 1)] == v[-(a + 1)]) ++a;
  if (a == r) return {Rational(0), a, true, r};
  return {Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(a)), a, false, r};
}

}  // namespace aperiodic
