// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "aperiodic/recurrence.hpp"
#include "aperiodic/verify.hpp"

namespace aperiodic {
namespace {

FiniteWord word(std::string_view text, int k = 3) { return FiniteWord::parse(text, Alphabet(k)); }

// Recurrence of the initial window by direct string search.
std::optional<std::int64_t> overlap_oracle(const std::string& w, std::int64_t l) {
  const std::string head = w.substr(0, static_cast<std::size_t>(l + 1));
  for (std::size_t pos = static_cast<std::size_t>(l + 1); pos + head.size() <= w.size(); ++pos)
    if (w.compare(pos, head.size(), head) == 0) return static_cast<std::int64_t>(pos);
  return std::nullopt;
}

bool has_overlap(const std::string& w) {
  // axaxa with a a symbol: positions p, p+s agree for 2s+1 symbols.
  for (std::size_t s = 1; 2 * s + 1 <= w.size(); ++s)
    for (std::size_t p = 0; p + 2 * s + 1 <= w.size(); ++p) {
      bool all = true;
      for (std::size_t j = 0; j <= s && all; ++j) all = w[p + j] == w[p + s + j];
      if (all) return true;
    }
  return false;
}

TEST(Recurrence, MinimumOverWindows) {
  auto w = word("0101", 2);
  auto table = min_recurrence_time(w, 1);
  EXPECT_EQ(table(0), 2);
  EXPECT_EQ(table(1), 2);
  EXPECT_EQ(recurrence_time_at(w, 1, 1), 2);
  EXPECT_EQ(recurrence_time_at(w, 2, 2), std::nullopt);
}

TEST(Recurrence, TableAgreesWithPerPositionMinimum) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 20);
    std::string text;
    for (int j = 0; j < m; ++j) text.push_back(static_cast<char>('0' + rng() % k));
    auto w = word(text, k);
    auto table = min_recurrence_time(w, m - 1);
    for (std::int64_t l = 0; l < m; ++l) {
      std::optional<std::int64_t> best;
      for (std::int64_t i = 1; i + l <= m; ++i) {
        auto r = recurrence_time_at(w, i, l);
        if (r && (!best || *r < *best)) best = r;
      }
      ASSERT_EQ(table(l), best) << text << " l=" << l;
    }
  }
}

TEST(Recurrence, OverlapRecurrenceExamples) {
  EXPECT_EQ(overlap_recurrence(word("012012"), 1), 3);
  EXPECT_EQ(overlap_recurrence(word("0000", 2), 1), 2);
  EXPECT_EQ(overlap_recurrence(word("0123", 4), 0), std::nullopt);
  EXPECT_THROW(overlap_recurrence(word("01", 2), 2), Error);
}

// A binary word is overlap-free exactly when every position's initial-window
// recurrence with overlap allowed stays at or above l+1.
TEST(Recurrence, OverlapFreeEquivalenceOnShortBinaryWords) {
  for (int m = 1; m <= 14; ++m) {
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      std::string text;
      for (int j = 0; j < m; ++j) text.push_back(static_cast<char>('0' + ((bits >> j) & 1u)));
      bool overlap_free_by_recurrence = true;
      for (int start = 0; start < m && overlap_free_by_recurrence; ++start) {
        auto suffix = word(std::string_view(text).substr(static_cast<std::size_t>(start)), 2);
        for (std::int64_t s = 1; 2 * s + 1 <= m - start; ++s) {
          auto r = recurrence_time_at(suffix, 1, s);
          if (r && *r <= s) {
            overlap_free_by_recurrence = false;
            break;
          }
        }
      }
      ASSERT_EQ(overlap_free_by_recurrence, !has_overlap(text)) << text;
      if (m >= 2) {
        for (std::int64_t l = 0; l < m; ++l)
          ASSERT_EQ(overlap_recurrence(word(text, 2), l), overlap_oracle(text, l)) << text << " l=" << l;
      }
    }
  }
}

TEST(Metric, AgreementRadius) {
  auto u = CenteredWindow(2, {0, 1, 1, 0, 1});
  auto v = CenteredWindow(2, {1, 1, 1, 0, 0});
  auto d = word_metric(u, v);
  EXPECT_EQ(d.agreement, 1);
  EXPECT_EQ(d.distance, Rational(BigInt(1), BigInt(2)));

  auto a = CenteredWindow(3, {2, 0, 1, 1, 0, 1, 1});
  auto b = CenteredWindow(3, {0, 0, 1, 1, 0, 1, 0});
  EXPECT_EQ(word_metric(a, b).distance, Rational(BigInt(1), BigInt(4)));

  auto c = CenteredWindow(1, {0, 0, 0});
  auto e = CenteredWindow(1, {0, 1, 0});
  EXPECT_EQ(word_metric(c, e).distance, Rational(1));
  EXPECT_FALSE(word_metric(c, e).agreement.has_value());

  auto same = word_metric(c, c);
  EXPECT_TRUE(same.unresolved);
  EXPECT_EQ(same.distance, Rational(0));
}

TEST(Metric, UnequalRadiiRejected) {
  try {
    word_metric(CenteredWindow(1, {0, 0, 0}), CenteredWindow(0, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnequalRadii);
  }
}

TEST(Metric, UltrametricOnRandomWindows) {
  std::mt19937 rng(9);
  auto random_window = [&] {
    std::vector<FiniteWord::Symbol> s(9);
    for (auto& x : s) x = static_cast<FiniteWord::Symbol>(rng() % 2);
    return CenteredWindow(4, s);
  };
  for (int t = 0; t < 2000; ++t) {
    auto x = random_window(), y = random_window(), z = random_window();
    auto dxz = word_metric(x, z).distance;
    auto bound = std::max(word_metric(x, y).distance, word_metric(y, z).distance);
    ASSERT_LE(dxz, bound);
    ASSERT_EQ(word_metric(x, y).distance, word_metric(y, x).distance);
  }
}

std::string random_text(std::mt19937& rng, int k, int m) {
  std::string text;
  for (int j = 0; j < m; ++j) text.push_back(static_cast<char>('0' + rng() % static_cast<unsigned>(k)));
  return text;
}

TEST(Recurrence, MonotoneCeilingAndChain) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 40);
    const std::string text = random_text(rng, k, m);
    auto w = word(text, k);
    auto table = min_recurrence_time(w, m - 1);
    std::optional<std::int64_t> prev;
    for (std::int64_t l = 0; l < m; ++l) {
      const auto r = table(l);
      if (!r) continue;
      if (prev) {
        ASSERT_LE(*prev, *r) << text;
      }
      prev = r;
      ASSERT_LE(BigInt(*r), pow_int(BigInt(k), static_cast<std::uint64_t>(l + 1))) << text;
      const auto first = recurrence_time_at(w, 1, l);
      const auto overlap = overlap_recurrence(w, l);
      if (first) {
        ASSERT_LE(*r, *first);
      }
      if (first && overlap) {
        ASSERT_LE(*first, *overlap) << text << " l=" << l;
      }
    }
  }
}

TEST(Recurrence, AperiodicWordsRecurLate) {
  std::mt19937 rng(13);
  const Profile profiles[] = {Profile::linear(), Profile::table({Rational(1), Rational(2)}, Rational(1, 2)),
                              Profile::exponential(BigInt(3), Rational(1, 2))};
  int passing = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 16);
    auto w = word(random_text(rng, k, m), k);
    for (const auto& p : profiles) {
      if (!verify_phi_aperiodic(w, p).ok()) continue;
      ++passing;
      auto table = min_recurrence_time(w, m - 1);
      for (std::int64_t l = 0; l < m; ++l)
        if (table(l)) {
          ASSERT_GT(BigInt(*table(l)), floor_eval(p, l)) << w.str();
        }
    }
  }
  EXPECT_GT(passing, 100);
}

// Binary words pass the linear gauge exactly when they are overlap-free.
TEST(Verify, LinearIsOverlapFree) {
  for (int m = 1; m <= 14; ++m) {
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      std::string text;
      for (int j = 0; j < m; ++j) text.push_back(static_cast<char>('0' + ((bits >> j) & 1u)));
      ASSERT_EQ(verify_phi_aperiodic(word(text, 2), Profile::linear()).ok(), !has_overlap(text)) << text;
    }
  }
}

}  // namespace
}  // namespace aperiodic
