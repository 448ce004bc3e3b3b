// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/profile.hpp"
#include "aperiodic/word.hpp"

namespace aperiodic {

/// m0 = 2 + l(1): the first length at which some condition C_is applies.
/// nullopt when phi never reaches 1, in which case every word is good.
inline std::optional<std::int64_t> first_condition_length(const Profile& profile) {
  auto ell = right_inverse_or_none(profile, BigInt(1));
  if (!ell) return std::nullopt;
  return 2 + *ell;
}

struct CountRow {
  std::int64_t m = 0;
  std::optional<BigInt> exact;  // |W^g(m)|
  std::optional<BigInt> bound;  // B(m)
  std::optional<Rational> c_pow_m;
  // B(m) >= c * B(m-1), the inductive step the bound relies on.
  std::optional<bool> step_ok;
};

struct CountLedger {
  int k = 0;
  std::optional<std::int64_t> m0;
  std::optional<Rational> c;
  std::vector<CountRow> rows;
  bool partial = false;  // enumeration stopped by the node budget
};

struct CountOptions {
  std::uint64_t node_budget = 100'000'000;
  unsigned threads = 1;
};

namespace detail {

// Incremental goodness search. run[d][s] is the length of the current run of
// w(j) = w(j-s) ending at position d; a window of l(s)+1 symbols recurring at
// shift s shows up as run >= l(s)+1.
class GoodWordSearch {
 public:
  GoodWordSearch(int k, const Profile& profile, std::int64_t m_max)
      : k_(k), m_max_(m_max), need_(static_cast<std::size_t>(m_max) + 1, kNever) {
    RightInverseTable ell(profile, std::max<std::int64_t>(m_max, 1));
    for (std::int64_t s = 1; s <= m_max; ++s)
      if (ell(s)) need_[static_cast<std::size_t>(s)] = *ell(s) + 1;
    sym_.assign(static_cast<std::size_t>(m_max), 0);
    run_.assign(static_cast<std::size_t>((m_max + 1) * (m_max + 1)), 0);
  }

  /// Appends symbol x at position `len` (0-based). Returns false and leaves
  /// the state untouched if the extension creates a violation.
  bool push(std::int64_t len, int x) {
    const auto* prev = &run_[static_cast<std::size_t>(len * (m_max_ + 1))];
    auto* cur = &run_[static_cast<std::size_t>((len + 1) * (m_max_ + 1))];
    for (std::int64_t s = 1; s <= len; ++s) {
      const std::int64_t r = sym_[static_cast<std::size_t>(len - s)] == x ? prev[s] + 1 : 0;
      if (r >= need_[static_cast<std::size_t>(s)]) return false;
      cur[s] = r;
    }
    sym_[static_cast<std::size_t>(len)] = static_cast<std::uint8_t>(x);
    return true;
  }

  const std::vector<std::uint8_t>& symbols() const { return sym_; }
  int k() const { return k_; }
  std::int64_t m_max() const { return m_max_; }

 private:
  static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
  int k_;
  std::int64_t m_max_;
  std::vector<std::int64_t> need_;
  std::vector<std::uint8_t> sym_;
  std::vector<std::int64_t> run_;  // (m_max+1) x (m_max+1), row d = runs after d symbols
};

struct CountState {
  std::vector<std::uint64_t> counts;
  std::uint64_t nodes = 0;
  bool exhausted_budget = false;
};

inline void count_from(GoodWordSearch& search, std::int64_t len, CountState& state, std::uint64_t budget,
                       std::atomic<std::uint64_t>& shared_nodes) {
  ++state.counts[static_cast<std::size_t>(len)];
  if (len == search.m_max()) return;
  for (int x = 0; x < search.k(); ++x) {
    if (state.exhausted_budget) return;
    if ((++state.nodes & 0xFFF) == 0 && shared_nodes.fetch_add(0x1000) + 0x1000 > budget) {
      state.exhausted_budget = true;
      return;
    }
    if (search.push(len, x)) count_from(search, len + 1, state, budget, shared_nodes);
  }
}

}  // namespace detail

/// |W^g(m)| for m = 0..m_max by depth-first extension of good prefixes.
inline CountLedger count_good_words(int k, const Profile& profile, std::int64_t m_max,
                                    const CountOptions& options = {}) {
  if (k < 2 || k > kMaxAlphabet) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  if (m_max < 0) fail(ErrorCode::InvalidArgument, "m_max must be non-negative");
  CountLedger ledger;
  ledger.k = k;
  ledger.m0 = first_condition_length(profile);

  std::atomic<std::uint64_t> shared_nodes{0};
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(m_max) + 1, 0);
  bool exhausted = false;

  // Split on the first `split` symbols so workers own disjoint subtrees.
  const unsigned threads = std::max(1u, options.threads);
  std::int64_t split = 0;
  std::uint64_t prefixes = 1;
  while (threads > 1 && prefixes < 4ull * threads && split < m_max) {
    ++split;
    prefixes *= static_cast<std::uint64_t>(k);
  }
  // Prefixes of length < split are counted here directly.
  std::vector<std::vector<std::uint8_t>> roots;
  {
    std::vector<std::uint8_t> prefix;
    detail::GoodWordSearch probe(k, profile, m_max);
    auto walk = [&](auto&& self, std::int64_t len) -> void {
      if (len == split) {
        roots.push_back(prefix);
        return;
      }
      ++totals[static_cast<std::size_t>(len)];
      for (int x = 0; x < k; ++x) {
        if (!probe.push(len, x)) continue;
        prefix.push_back(static_cast<std::uint8_t>(x));
        self(self, len + 1);
        prefix.pop_back();
      }
    };
    walk(walk, 0);
  }

  std::vector<detail::CountState> states(roots.size());
  auto work = [&](std::size_t r) {
    detail::GoodWordSearch search(k, profile, m_max);
    for (std::int64_t d = 0; d < split; ++d) search.push(d, roots[r][static_cast<std::size_t>(d)]);
    states[r].counts.assign(static_cast<std::size_t>(m_max) + 1, 0);
    detail::count_from(search, split, states[r], options.node_budget, shared_nodes);
  };
  if (threads == 1) {
    for (std::size_t r = 0; r < roots.size(); ++r) work(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < roots.size();) work(r);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& st : states) {
    exhausted = exhausted || st.exhausted_budget;
    for (std::size_t m = 0; m < st.counts.size(); ++m) totals[m] += st.counts[m];
  }

  ledger.partial = exhausted;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    CountRow row;
    row.m = m;
    if (!exhausted) row.exact = BigInt(totals[static_cast<std::size_t>(m)]);
    ledger.rows.push_back(std::move(row));
  }
  if (exhausted) {
    fail(ErrorCode::BudgetExceeded, "node budget of " + std::to_string(options.node_budget) +
                                        " exhausted while counting good words");
  }
  return ledger;
}

/// The same as count_good_words but returns the truncated ledger instead of
/// throwing when the budget runs out; rows are then marked partial.
inline CountLedger count_good_words_partial(int k, const Profile& profile, std::int64_t m_max,
                                            const CountOptions& options = {}) {
  try {
    return count_good_words(k, profile, m_max, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  // Largest prefix of lengths that fit in the budget.
  CountLedger best;
  best.k = k;
  best.m0 = first_condition_length(profile);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    try {
      best = count_good_words(k, profile, m, options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      break;
    }
  }
  for (std::int64_t m = static_cast<std::int64_t>(best.rows.size()); m <= m_max; ++m) {
    CountRow row;
    row.m = m;
    best.rows.push_back(row);
  }
  best.partial = true;
  return best;
}

/// B(m) = k^m for m < m0, then
/// B(m+1) = (k - floor phi(0)) B(m) - sum_{j=1..m} (floor phi(j) - floor phi(j-1)) B(m-j),
/// clamped at 0. With c given, records c^m and whether B(m) >= c B(m-1).
inline CountLedger lower_bound_ledger(int k, const Profile& profile, std::int64_t m_max,
                                      const std::optional<Rational>& c = std::nullopt) {
  if (k < 2 || k > kMaxAlphabet) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  if (m_max < 0) fail(ErrorCode::InvalidArgument, "m_max must be non-negative");
  CountLedger ledger;
  ledger.k = k;
  ledger.m0 = first_condition_length(profile);
  ledger.c = c;
  std::vector<BigInt> floors;
  for (std::int64_t j = 0; j <= m_max; ++j) floors.push_back(floor_eval(profile, j));
  std::vector<BigInt> b;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    BigInt value;
    if (!ledger.m0 || m < *ledger.m0) {
      value = pow_int(BigInt(k), static_cast<std::uint64_t>(m));
    } else {
      const std::int64_t prev = m - 1;
      value = (BigInt(k) - floors[0]) * b[static_cast<std::size_t>(prev)];
      for (std::int64_t j = 1; j <= prev; ++j)
        value -= (floors[static_cast<std::size_t>(j)] - floors[static_cast<std::size_t>(j - 1)]) *
                 b[static_cast<std::size_t>(prev - j)];
      if (value < 0) value = 0;
    }
    b.push_back(value);
    CountRow row;
    row.m = m;
    row.bound = value;
    if (c) {
      row.c_pow_m = pow_rat(*c, static_cast<std::uint64_t>(m));
      if (m > 0) row.step_ok = Rational(value) >= *c * Rational(b[static_cast<std::size_t>(m - 1)]);
    }
    ledger.rows.push_back(std::move(row));
  }
  return ledger;
}

/// Exact counts and recurrence bounds side by side.
inline CountLedger merge_ledgers(const CountLedger& exact, const CountLedger& bound) {
  CountLedger out = bound;
  out.partial = exact.partial;
  for (std::size_t m = 0; m < out.rows.size() && m < exact.rows.size(); ++m) out.rows[m].exact = exact.rows[m].exact;
  return out;
}

/// Outcome of checking the uniqueness step of the counting argument for one
/// condition (i, s) at length m: within L = W^g(m-1) x A, the words violating
/// C_is are determined by their prefix of length i+s-1.
struct UniquenessCheck {
  std::int64_t i = 0;
  std::int64_t s = 0;
  std::int64_t m = 0;
  std::uint64_t largest_class = 0;     // max over q of |L_q n C_is^c|
  std::uint64_t violating = 0;         // |L n C_is^c|
  std::uint64_t good_prefixes = 0;     // |W^g(i+s-1)|
  bool ok() const { return largest_class <= 1 && violating <= good_prefixes; }
};

/// Enumerates L for the given m and checks the condition (i, s) with
/// i + s + l(s) = m. Intended for small m only.
inline UniquenessCheck check_condition_uniqueness(int k, const Profile& profile, std::int64_t i, std::int64_t s,
                                                  std::uint64_t node_budget = 50'000'000) {
  const std::int64_t ell = right_inverse(profile, BigInt(s));
  const std::int64_t m = i + s + ell;
  if (i < 1 || s < 1) fail(ErrorCode::InvalidArgument, "condition indices must be positive");
  UniquenessCheck out{i, s, m, 0, 0, 0};
  const std::int64_t prefix_len = i + s - 1;

  // Good words of length m-1, each extended by every symbol.
  detail::GoodWordSearch search(k, profile, std::max<std::int64_t>(m - 1, 1));
  std::map<std::vector<std::uint8_t>, std::uint64_t> classes;
  std::vector<std::uint8_t> word(static_cast<std::size_t>(m));
  std::uint64_t nodes = 0;
  auto walk = [&](auto&& self, std::int64_t len) -> void {
    if (++nodes > node_budget) fail(ErrorCode::BudgetExceeded, "uniqueness check exceeded its node budget");
    if (len == prefix_len) ++out.good_prefixes;
    if (len == m - 1) {
      for (int x = 0; x < k; ++x) {
        word[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(x);
        bool equal = true;
        for (std::int64_t j = 0; j <= ell && equal; ++j)
          equal = word[static_cast<std::size_t>(i - 1 + j)] == word[static_cast<std::size_t>(i - 1 + s + j)];
        if (!equal) continue;
        ++out.violating;
        std::vector<std::uint8_t> q(word.begin(), word.begin() + prefix_len);
        out.largest_class = std::max(out.largest_class, ++classes[q]);
      }
      return;
    }
    for (int x = 0; x < k; ++x) {
      if (!search.push(len, x)) continue;
      word[static_cast<std::size_t>(len)] = static_cast<std::uint8_t>(x);
      self(self, len + 1);
    }
  };
  walk(walk, 0);
  return out;
}

}  // namespace aperiodic
