// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "aperiodic/condition.hpp"
#include "aperiodic/counting.hpp"
#include "aperiodic/verify.hpp"

namespace aperiodic {

struct SymbolOrder {
  enum class Kind { Lexicographic, Random };
  Kind kind = Kind::Lexicographic;
  std::uint64_t seed = 0;

  static SymbolOrder lexicographic() { return {}; }
  static SymbolOrder random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct ConstructOptions {
  SymbolOrder order;
  std::uint64_t node_budget = 100'000'000;
};

/// Depth-first search for a phi-aperiodic word of the given length, pruning
/// each extension that completes a violation. The result is re-verified.
inline FiniteWord construct_word(int k, const Profile& profile, std::int64_t target_len,
                                 const ConstructOptions& options = {}) {
  if (k < 2 || k > kMaxAlphabet) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  if (target_len < 0) fail(ErrorCode::InvalidArgument, "target length must be non-negative");
  const Alphabet alphabet(k);
  if (target_len == 0) return FiniteWord(alphabet, {});

  detail::GoodWordSearch search(k, profile, target_len);
  std::mt19937_64 rng(options.order.seed);
  // choices[d] is the symbol order at depth d, next[d] the index to try.
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(target_len));
  std::vector<int> next(static_cast<std::size_t>(target_len), 0);
  auto enter = [&](std::int64_t d) {
    auto& c = choices[static_cast<std::size_t>(d)];
    c.resize(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    if (options.order.kind == SymbolOrder::Kind::Random) std::shuffle(c.begin(), c.end(), rng);
    next[static_cast<std::size_t>(d)] = 0;
  };

  std::int64_t depth = 0;
  std::uint64_t nodes = 0;
  enter(0);
  while (depth < target_len) {
    auto& idx = next[static_cast<std::size_t>(depth)];
    if (idx == k) {
      if (depth == 0) fail(ErrorCode::Exhausted, "no phi-aperiodic word of length " + std::to_string(target_len));
      --depth;
      continue;
    }
    if (++nodes > options.node_budget)
      fail(ErrorCode::BudgetExceeded, "construction exceeded " + std::to_string(options.node_budget) + " nodes");
    const int x = choices[static_cast<std::size_t>(depth)][static_cast<std::size_t>(idx++)];
    if (!search.push(depth, x)) continue;
    if (++depth < target_len) enter(depth);
  }
  const auto& sym = search.symbols();
  FiniteWord word(alphabet, std::vector<FiniteWord::Symbol>(sym.begin(), sym.begin() + target_len));
  if (!verify_phi_aperiodic(word, profile).ok())
    fail(ErrorCode::InvalidArgument, "internal error: constructed word failed verification");
  return word;
}

/// Growth certificate: phi(l) <= k^(delta_tilde l) for every l >= l1.
struct GrowthCertificate {
  std::int64_t l1 = 0;
  Rational delta_tilde;
};

struct GaugeDerivation {
  Rational c;                    // (k + U)/2 with U >= k^delta_tilde rational
  Rational k_pow_upper;          // U
  std::int64_t l1 = 0;
  std::int64_t l2 = 0;           // threshold making the surrogate satisfy the condition
  std::int64_t l0 = 0;           // max(l1, l2) + 1
  Profile surrogate = Profile::linear();
  ConditionReport report;        // the condition for the surrogate at c
};

namespace detail {

// Exact phi(l) for the kinds whose values are rational.
inline Rational exact_value(const Profile& profile, std::int64_t l) {
  return std::visit(overloaded{
                        [&](const TableProfile& t) -> Rational {
                          const auto size = static_cast<std::int64_t>(t.values.size());
                          if (l < size) return t.values[static_cast<std::size_t>(l)];
                          if (!t.step) return t.values.back();
                          return t.values.back() + *t.step * Rational(l - size + 1);
                        },
                        [&](const LinearProfile&) { return Rational(l); },
                        [&](const PowerOfTwoProfile&) { return Rational(BigInt(1) << static_cast<unsigned>(l)); },
                        [&](const auto&) -> Rational {
                          fail(ErrorCode::InvalidArgument, "profile has no rational closed form");
                        },
                    },
                    profile.kind());
}

// v <= k^(p l / q), exactly.
inline bool below_power(const Rational& v, int k, std::uint64_t p, std::uint64_t q, std::int64_t l) {
  if (v <= 0) return true;
  return pow_int(numerator_of(v), q) <= pow_int(BigInt(k), p * static_cast<std::uint64_t>(l)) *
                                           pow_int(denominator_of(v), q);
}

// Does phi(l) <= k^(delta_tilde l) hold for every l >= from?
inline bool dominated_from(const Profile& profile, int k, const Rational& dt, std::int64_t from) {
  const auto p = numerator_of(dt).convert_to<std::uint64_t>();
  const auto q = denominator_of(dt).convert_to<std::uint64_t>();
  return std::visit(
      overloaded{
          [&](const ExponentialProfile& e) {
            // base^(e.p/e.q) <= k^(p/q) for the rate; then every l >= 0 follows.
            return pow_int(e.base, e.p * q) <= pow_int(BigInt(k), p * e.q);
          },
          [&](const ThresholdedProfile& t) { return dominated_from(*t.inner, k, dt, std::max(from, t.l0 + 1)); },
          [&](const PowerOfTwoProfile&) { return pow_int(BigInt(2), q) <= pow_int(BigInt(k), p); },
          [&](const auto&) {
            // Linear and tables grow by at most `inc` per step past `tail_start`.
            // With a <= k^delta_tilde, a^l >= phi(l) and a^l (a - 1) >= inc at
            // some l past tail_start, induction covers every larger l.
            std::int64_t tail_start = 0;
            Rational inc(1);
            if (const auto* t = std::get_if<TableProfile>(&profile.kind())) {
              tail_start = static_cast<std::int64_t>(t->values.size());
              inc = t->step.value_or(Rational(0));
            }
            const Rational a = pow_frac_bounds(BigInt(k), p, q, 64).lo;
            if (a <= 1) return false;
            Rational a_pow = pow_rat(a, static_cast<std::uint64_t>(std::max<std::int64_t>(from, 0)));
            for (std::int64_t l = from; l < from + 1'000'000; ++l, a_pow *= a) {
              const Rational v = exact_value(profile, l);
              if (!below_power(v, k, p, q, l)) return false;
              if (l >= tail_start && a_pow >= v && a_pow * (a - 1) >= inc) return true;
            }
            return false;
          },
      },
      profile.kind());
}

}  // namespace detail

/// Parameters of the existence argument for sub-exponential gauges: a rational
/// c with k^delta_tilde < c < k, the thresholded exponential surrogate that
/// satisfies the sufficiency condition at c, and the length l0 from which the
/// surrogate dominates phi.
inline GaugeDerivation derive_theorem_1_1(int k, const Rational& delta, const Profile& phi,
                                              const GrowthCertificate& cert) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "k must be at least 2");
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (cert.delta_tilde >= 1)
    fail(ErrorCode::CertificateInvalid, "delta_tilde = " + to_fraction_string(cert.delta_tilde) + " is not below 1");
  if (cert.delta_tilde <= delta)
    fail(ErrorCode::CertificateInvalid, "delta_tilde must exceed delta");
  if (cert.l1 < 0) fail(ErrorCode::CertificateInvalid, "l1 must be non-negative");
  if (numerator_of(cert.delta_tilde) > 1'000'000 || denominator_of(cert.delta_tilde) > 1'000'000)
    fail(ErrorCode::CertificateInvalid, "delta_tilde must be a rational with small numerator and denominator");
  if (!detail::dominated_from(phi, k, cert.delta_tilde, cert.l1))
    fail(ErrorCode::CertificateInvalid, "phi(l) <= k^(delta_tilde l) fails for some l >= l1");

  const auto p = numerator_of(cert.delta_tilde).convert_to<std::uint64_t>();
  const auto q = denominator_of(cert.delta_tilde).convert_to<std::uint64_t>();
  Rational upper;
  for (unsigned bits = 32;; bits *= 2) {
    upper = pow_frac_bounds(BigInt(k), p, q, bits).hi;
    if (upper < k) break;
  }
  GaugeDerivation out;
  out.k_pow_upper = upper;
  out.c = (Rational(k) + upper) / 2;
  out.l1 = cert.l1;
  out.l2 = exists_threshold_for_exponential(k, cert.delta_tilde, out.c);
  out.l0 = std::max(out.l1, out.l2) + 1;
  out.surrogate = Profile::thresholded(Profile::exponential(BigInt(k), cert.delta_tilde), out.l2);
  out.report = condition_3_2(k, out.surrogate, out.c);
  return out;
}

}  // namespace aperiodic
