// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/word.hpp"

namespace aperiodic {

/// Prefix w(0..len-1) of the one-sided Morse-Thue word, built by the
/// substitution a_{n+1} = a_n b_n, b_{n+1} = b_n a_n from a_0 = 0, b_0 = 1.
/// Since b_n is the complement of a_n, each doubling appends the complement.
inline std::vector<FiniteWord::Symbol> morse_thue_prefix(std::uint64_t len) {
  std::vector<FiniteWord::Symbol> a{0};
  while (a.size() < len) {
    const std::size_t n = a.size();
    a.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) a.push_back(static_cast<FiniteWord::Symbol>(1 - a[j]));
  }
  a.resize(static_cast<std::size_t>(len));
  return a;
}

/// Parity of the binary digit sum; an independent description of w(i) for i >= 0.
inline int digit_sum_parity(std::uint64_t i) { return std::popcount(i) & 1; }

/// Two-sided Morse-Thue word restricted to [from, to], negative indices by
/// w(-n) = w(n-1).
inline FiniteWord morse_thue_window(std::int64_t from, std::int64_t to) {
  if (from > to) fail(ErrorCode::InvalidArgument, "window needs from <= to");
  auto mirror = [](std::int64_t i) -> std::uint64_t {
    return static_cast<std::uint64_t>(i >= 0 ? i : -i - 1);
  };
  std::uint64_t reach = 0;
  for (std::int64_t i : {from, to}) reach = std::max(reach, mirror(i) + 1);
  const auto prefix = morse_thue_prefix(reach);
  std::vector<FiniteWord::Symbol> out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (std::int64_t i = from; i <= to; ++i) out.push_back(prefix[static_cast<std::size_t>(mirror(i))]);
  return FiniteWord(Alphabet(2), std::move(out));
}

/// First 1-based position i with [w(i)..w(i+h-1)] = [w(i+h)..w(i+2h-1)].
inline std::optional<std::int64_t> find_square(const FiniteWord& w, std::int64_t half_len) {
  if (half_len < 1) fail(ErrorCode::InvalidArgument, "square half length must be positive");
  const auto m = static_cast<std::int64_t>(w.length());
  auto sym = w.symbols();
  std::int64_t run = 0;
  for (std::int64_t j = 0; j + half_len < m; ++j) {
    run = sym[static_cast<std::size_t>(j)] == sym[static_cast<std::size_t>(j + half_len)] ? run + 1 : 0;
    if (run >= half_len) return j - half_len + 2;
  }
  return std::nullopt;
}

}  // namespace aperiodic
