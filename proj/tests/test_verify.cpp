// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "aperiodic/verify.hpp"

namespace aperiodic {
namespace {

Rational R(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

TEST(Verify, ConstantWordFailsLinear) {
  auto w = FiniteWord::parse("000", Alphabet(2));
  auto v = verify_phi_aperiodic(w, Profile::linear());
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(*v.violation, (Violation{1, 1, 1}));
}

TEST(Verify, SquareFreeTernaryPassesZeroProfile) {
  // phi = 0 forbids nothing; phi(l) = l forbids overlaps and squares of length >= 2.
  auto w = FiniteWord::parse("0120210121020120210201210120", Alphabet(3));
  EXPECT_TRUE(verify_phi_aperiodic(w, Profile::table({R(0)})).ok());
}

TEST(Verify, BoundedProfileOnlyViaAutoOrNaive) {
  auto w = FiniteWord::parse("0101", Alphabet(2));
  auto hold = Profile::table({R(0), R(1)});
  EXPECT_THROW(verify_phi_aperiodic(w, hold, VerifyMethod::RightInverse), Error);
  EXPECT_EQ(verify_phi_aperiodic(w, hold, VerifyMethod::Auto).violation,
            verify_phi_aperiodic(w, hold, VerifyMethod::Naive).violation);
}

// The fast scan must return exactly the naive witness on every short word.
TEST(Verify, FastMatchesNaiveExhaustively) {
  const std::vector<Profile> profiles = {
      Profile::linear(),
      Profile::power_of_two(),
      Profile::exponential(BigInt(2), R(1, 2)),
      Profile::thresholded(Profile::linear(), 2),
      Profile::table({R(0), R(1, 2), R(2)}, R(1)),
      Profile::table({R(0), R(1)}),
      Profile::table({R(3)}),
  };
  for (int k = 2; k <= 3; ++k) {
    const int max_len = k == 2 ? 12 : 9;
    for (int m = 1; m <= max_len; ++m) {
      std::vector<FiniteWord::Symbol> sym(static_cast<std::size_t>(m), 0);
      while (true) {
        FiniteWord w(Alphabet(k), sym);
        for (const auto& p : profiles) {
          auto fast = verify_phi_aperiodic(w, p, VerifyMethod::Auto);
          auto slow = verify_phi_aperiodic(w, p, VerifyMethod::Naive);
          ASSERT_EQ(fast.violation, slow.violation) << w.str() << " " << format_profile(p);
        }
        std::size_t j = 0;
        while (j < sym.size() && ++sym[j] == k) sym[j++] = 0;
        if (j == sym.size()) break;
      }
    }
  }
}

TEST(Verify, PrefixClosure) {
  auto w = FiniteWord::parse("0120210121020120210201210120", Alphabet(3));
  auto p = Profile::table({R(0), R(1)}, R(1, 2));
  auto full = verify_phi_aperiodic(w, p);
  for (std::size_t n = 1; n <= w.length(); ++n) {
    auto prefix = FiniteWord(w.alphabet(), {w.symbols().begin(), w.symbols().begin() + n});
    if (full.ok()) {
      ASSERT_TRUE(verify_phi_aperiodic(prefix, p).ok());
    }
  }
}

}  // namespace
}  // namespace aperiodic
