// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <tuple>

#include "aperiodic/profile.hpp"
#include "aperiodic/word.hpp"

namespace aperiodic {

/// A matching pair of windows [w(i)..w(i+l)] = [w(i+s)..w(i+s+l)] with
/// s <= phi(l).
struct Violation {
  std::int64_t i = 0;
  std::int64_t s = 0;
  std::int64_t l = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Witness order: smallest i+s+l, then smallest i, then smallest s.
inline bool precedes(const Violation& a, const Violation& b) {
  return std::tuple(a.i + a.s + a.l, a.i, a.s) < std::tuple(b.i + b.s + b.l, b.i, b.s);
}

struct Verdict {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
};

enum class VerifyMethod {
  Auto,          // right-inverse scan; bounded profiles handled by skipping unreachable shifts
  RightInverse,  // same scan, but a bounded profile is an error
  Naive,         // direct enumeration of (i, s, l); kept as the test oracle
};

namespace detail {

inline Verdict verify_naive(const FiniteWord& w, const Profile& profile) {
  const auto m = static_cast<std::int64_t>(w.length());
  auto sym = w.symbols();
  const auto floors = floor_table(profile, std::max<std::int64_t>(m, 0));
  std::optional<Violation> best;
  for (std::int64_t i = 1; i <= m; ++i) {
    for (std::int64_t s = 1; i + s <= m; ++s) {
      for (std::int64_t l = 0; i + s + l <= m; ++l) {
        if (sym[static_cast<std::size_t>(i - 1 + l)] != sym[static_cast<std::size_t>(i - 1 + s + l)]) break;
        if (s <= floors[static_cast<std::size_t>(l)]) {
          Violation v{i, s, l};
          if (!best || precedes(v, *best)) best = v;
          break;  // larger l only grows i+s+l
        }
      }
    }
  }
  return {best};
}

// A violation exists at (i, s) iff the windows of length l(s)+1 at i and i+s
// agree, and (i, s, l(s)) is then the smallest witness with that (i, s).
inline Verdict verify_right_inverse(const FiniteWord& w, const Profile& profile) {
  const auto m = static_cast<std::int64_t>(w.length());
  if (m < 2) return {};
  auto sym = w.symbols();
  const RightInverseTable ell(profile, m - 1);
  std::optional<Violation> best;
  for (std::int64_t s = 1; s < m; ++s) {
    const auto& ls = ell(s);
    if (!ls) break;  // non-decreasing target: no larger shift is reachable either
    const std::int64_t need = *ls + 1;
    if (s + need > m) continue;
    std::int64_t run = 0;
    for (std::int64_t j = 0; j + s < m; ++j) {
      run = sym[static_cast<std::size_t>(j)] == sym[static_cast<std::size_t>(j + s)] ? run + 1 : 0;
      if (run < need) continue;
      const std::int64_t i = j + 1 - need + 1;  // 1-based start of the matching window
      Violation v{i, s, *ls};
      if (!best || precedes(v, *best)) best = v;
      break;
    }
  }
  return {best};
}

}  // namespace detail

/// Checks that every recurrence [w(i)..w(i+l)] = [w(i+s)..w(i+s+l)] inside w
/// has s > phi(l). On failure returns the first witness in `precedes` order.
inline Verdict verify_phi_aperiodic(const FiniteWord& w, const Profile& profile,
                                    VerifyMethod method = VerifyMethod::Auto) {
  switch (method) {
    case VerifyMethod::Naive:
      return detail::verify_naive(w, profile);
    case VerifyMethod::RightInverse:
      if (is_bounded(profile))
        fail(ErrorCode::BoundedProfile, "right-inverse verification needs an unbounded profile");
      return detail::verify_right_inverse(w, profile);
    case VerifyMethod::Auto:
      break;
  }
  return detail::verify_right_inverse(w, profile);
}

}  // namespace aperiodic
