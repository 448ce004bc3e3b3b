// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "aperiodic/continued_fraction.hpp"
#include "aperiodic/morse_thue.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/verify.hpp"

namespace aperiodic {
namespace {

Rational R(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

// lo <= (a + b sqrt d)/2 <= hi for rationals lo, hi; b = +-1.
bool brackets_quadratic(const RationalInterval& iv, long a, long b, long d) {
  auto le = [&](const Rational& x) {  // x <= (a + b sqrt d)/2  <=>  b sqrt d >= 2x - a
    const Rational t = 2 * x - a;
    if (b > 0) return t <= 0 || t * t <= d;
    return t <= 0 && t * t >= d;
  };
  auto ge = [&](const Rational& x) {  // x >= (a + b sqrt d)/2  <=>  b sqrt d <= 2x - a
    const Rational t = 2 * x - a;
    if (b > 0) return t >= 0 && t * t >= d;
    return t >= 0 || t * t <= d;
  };
  return le(iv.lo) && ge(iv.hi);
}

TEST(MorseThue, Windows) {
  EXPECT_EQ(morse_thue_window(0, 15).str(), "0110100110010110");
  EXPECT_EQ(morse_thue_window(-4, -1).str(), "0110");
  EXPECT_EQ(morse_thue_window(5, 5).str(), "0");
  EXPECT_EQ(morse_thue_window(-1, 0).str(), "00");
  EXPECT_THROW(morse_thue_window(3, 2), Error);
}

TEST(MorseThue, SubstitutionAndDigitSum) {
  const auto w = morse_thue_prefix(1u << 16);
  for (std::uint64_t i = 0; i < w.size(); ++i) ASSERT_EQ(w[i], digit_sum_parity(i)) << i;
  for (std::size_t n = 1; n < 16; ++n) {
    const std::size_t h = std::size_t{1} << n;
    for (std::size_t j = 0; j < h; ++j) ASSERT_EQ(w[h + j], 1 - w[j]);
  }
  for (std::int64_t n = 1; n < 200; ++n) {
    auto win = morse_thue_window(-n, -n);
    EXPECT_EQ(win.at(1), digit_sum_parity(static_cast<std::uint64_t>(n - 1)));
  }
}

TEST(MorseThue, OverlapFreeAndSquares) {
  const auto w = morse_thue_window(1, 1 << 12);
  EXPECT_TRUE(verify_phi_aperiodic(w, Profile::linear()).ok());
  EXPECT_TRUE(verify_phi_aperiodic(morse_thue_window(0, (1 << 12) - 1), Profile::linear()).ok());
  auto table = min_recurrence_time(w, 1100);
  for (int n = 2; n <= 10; ++n) {
    // A square of two blocks of 2^n symbols, i.e. windows of length 2^n - 1.
    const std::int64_t h = std::int64_t{1} << n;
    auto pos = find_square(w, h);
    ASSERT_TRUE(pos.has_value()) << n;
    for (std::int64_t j = 0; j < h; ++j)
      ASSERT_EQ(w.at(static_cast<std::size_t>(*pos + j)), w.at(static_cast<std::size_t>(*pos + h + j)));
    ASSERT_TRUE(table.attained(h - 1));
    EXPECT_LE(*table(h - 1), h) << n;
  }
}

TEST(ContinuedFraction, Convergents) {
  auto golden = ContinuedFraction::parse("1;(1)");
  auto c = convergents(golden, 6);
  const long expect[6][2] = {{1, 1}, {2, 1}, {3, 2}, {5, 3}, {8, 5}, {13, 8}};
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(c[static_cast<std::size_t>(j)].p, expect[j][0]);
    EXPECT_EQ(c[static_cast<std::size_t>(j)].q, expect[j][1]);
  }
  auto s2 = convergents(ContinuedFraction::parse("0;(2)"), 3);
  EXPECT_EQ(s2[1].p, 1);
  EXPECT_EQ(s2[1].q, 2);
  EXPECT_EQ(s2[2].p, 2);
  EXPECT_EQ(s2[2].q, 5);
  auto one = convergents(ContinuedFraction::parse("7;3,5"), 1);
  EXPECT_EQ(one[0].p, 7);
  EXPECT_EQ(one[0].q, 1);
}

TEST(ContinuedFraction, DeterminantAndGrowth) {
  for (const char* text : {"1;(1)", "0;(2)", "3;7,15,1,292,1,1,1,2,1,3", "2;1,(2,1,1,4)", "0;1,2,1000,(1)"}) {
    auto cf = ContinuedFraction::parse(text);
    const std::size_t depth = cf.size().value_or(40);
    auto c = convergents(cf, depth);
    for (std::size_t n = 1; n < c.size(); ++n) {
      const BigInt det = c[n].p * c[n - 1].q - c[n - 1].p * c[n].q;
      EXPECT_TRUE(det == 1 || det == -1) << text << " n=" << n;
      if (n >= 2) {
        EXPECT_GT(c[n].q, c[n - 1].q);
      }
    }
  }
}

TEST(ContinuedFraction, ParseErrors) {
  auto column = [](const char* text) -> std::string {
    try {
      ContinuedFraction::parse(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse);
      return e.what();
    }
    return "";
  };
  EXPECT_NE(column("1;").find("column"), std::string::npos);
  EXPECT_NE(column("1;2,x").find("column 5"), std::string::npos);
  EXPECT_NE(column("1;(2").find("missing"), std::string::npos);
  EXPECT_NE(column("1;0").find("positive"), std::string::npos);
  EXPECT_EQ(ContinuedFraction::parse("-2;1,(3,4)").str(), "-2;1,(3,4)");
  EXPECT_THROW(convergents(ContinuedFraction::parse("1;2"), 3), Error);
}

TEST(Badness, GoldenRatioAtOne) {
  auto r = badness_profile(ContinuedFraction::parse("1;(1)"), 1);
  EXPECT_EQ(r.argmin, 1);
  EXPECT_TRUE(brackets_quadratic(r.value, 3, -1, 5));
  EXPECT_LT(r.value.hi - r.value.lo, R(1, 1000000000));
}

// Brute force in long double; only compared where the minimiser is clear.
std::pair<long double, std::int64_t> badness_float(long double alpha, std::int64_t Q) {
  long double best = 1;
  std::int64_t arg = 0;
  for (std::int64_t q = 1; q <= Q; ++q) {
    const long double x = q * alpha;
    const long double v = q * std::fabs(x - std::nearbyint(x));
    if (v < best) {
      best = v;
      arg = q;
    }
  }
  return {best, arg};
}

TEST(Badness, MatchesFloatingScan) {
  struct Case {
    const char* cf;
    long double alpha;
  };
  const Case cases[] = {{"1;(1)", (1 + std::sqrt(5.0L)) / 2},
                        {"1;(2)", std::sqrt(2.0L)},
                        {"1;(1,2)", std::sqrt(3.0L)},
                        {"3;7,15,1,292,1,1,1,2,1,3,1,14,2,1,1,2,2,2,2", 3.14159265358979323846L}};
  for (const auto& c : cases) {
    auto r = badness_profile(ContinuedFraction::parse(c.cf), 3000);
    auto [v, q] = badness_float(c.alpha, 3000);
    EXPECT_EQ(r.argmin, q) << c.cf;
    EXPECT_NEAR(static_cast<double>(r.value.lo), static_cast<double>(v), 1e-9) << c.cf;
  }
}

TEST(Badness, NonIncreasingInHorizon) {
  auto cf = ContinuedFraction::parse("2;1,(2,1,1,4)");
  Rational prev(10);
  for (std::int64_t Q : {1, 2, 5, 10, 50, 100, 500, 2000}) {
    auto r = badness_profile(cf, Q);
    EXPECT_LE(r.value.hi, prev);
    prev = r.value.hi;
  }
}

TEST(Badness, LargePartialQuotient) {
  // a_3 = 1000 follows q_2, so q_2 ||q_2 alpha|| < 1/1000.
  auto cf = ContinuedFraction::parse("0;1,2,1000,(1)");
  auto v = convergent_badness(cf, 2);
  EXPECT_LT(v.hi, R(1, 1000));
  auto r = badness_profile(cf, 100);
  EXPECT_EQ(r.argmin, convergents(cf, 3)[2].q);
  EXPECT_LT(r.value.hi, R(1, 1000));
}

TEST(Badness, FiniteExpansionIsExact) {
  auto r = badness_profile(ContinuedFraction::parse("0;3"), 10);
  // alpha = 1/3: q = 3 gives 0.
  EXPECT_TRUE(r.value.exact());
  EXPECT_EQ(r.value.lo, 0);
  EXPECT_EQ(r.argmin, 3);
}

TEST(Fc, GoldenRatio) {
  auto golden = ContinuedFraction::parse("1;(1)");
  auto yes = is_Fc_aperiodic_at_zero(golden, R(7, 20), 20000);
  EXPECT_TRUE(yes.aperiodic);
  EXPECT_EQ(yes.horizon, 20000);
  auto no = is_Fc_aperiodic_at_zero(golden, R(2, 5), 10);
  EXPECT_FALSE(no.aperiodic);
  EXPECT_EQ(*no.witness, 1);
  // Above the Hurwitz constant every alpha fails eventually.
  for (const char* text : {"0;(2)", "1;(1,2)", "0;1,2,(3)"}) {
    auto v = is_Fc_aperiodic_at_zero(ContinuedFraction::parse(text), R(9, 20), 100000);
    EXPECT_FALSE(v.aperiodic) << text;
  }
}

TEST(Fc, FibonacciApproachHurwitz) {
  auto golden = ContinuedFraction::parse("1;(1)");
  auto c = convergents(golden, 30);
  for (std::size_t n = 10; n < 25; ++n) {
    auto v = convergent_badness(golden, n);
    const double expected = 1 / std::sqrt(5.0);
    const double err = std::fabs(static_cast<double>(v.lo) - expected);
    // q_n ||q_n alpha|| = 1/sqrt5 (1 +- phi^-2n) up to rounding.
    EXPECT_LT(err, 2.0 / BigInt(c[n].q * c[n].q).convert_to<double>() + 1e-12) << n;
  }
}

}  // namespace
}  // namespace aperiodic
