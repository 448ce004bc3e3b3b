// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "aperiodic/error.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/profile.hpp"
#include "aperiodic/recurrence.hpp"
#include "aperiodic/word.hpp"

namespace aperiodic {

/// A non-increasing map F from positive rationals eps to non-negative values:
/// either F(eps) = floor phi(-2 ceil(log2 eps)) for eps <= 1 and 0 beyond, or a
/// step function given by breakpoints.
class AperiodicityBound {
 public:
  struct Breakpoint {
    Rational eps;
    Rational value;
  };

  static AperiodicityBound from_profile(Profile profile) { return AperiodicityBound(std::move(profile)); }

  /// F(eps) = value of the breakpoint with the smallest eps_j >= eps; 0 above
  /// the largest breakpoint and the last value below the smallest one.
  static AperiodicityBound from_breakpoints(std::vector<Breakpoint> points) {
    if (points.empty()) fail(ErrorCode::InvalidArgument, "bound needs at least one breakpoint");
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.eps > b.eps; });
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (points[j].eps <= 0 || points[j].value < 0)
        fail(ErrorCode::InvalidArgument, "breakpoints need eps > 0 and value >= 0");
      if (j > 0 && points[j].eps == points[j - 1].eps) fail(ErrorCode::InvalidArgument, "duplicate breakpoint");
      if (j > 0 && points[j].value < points[j - 1].value)
        fail(ErrorCode::InvalidArgument, "F must be non-increasing in eps");
    }
    return AperiodicityBound(std::move(points));
  }

  Rational operator()(const Rational& eps) const {
    if (eps <= 0) fail(ErrorCode::InvalidArgument, "F is defined for eps > 0");
    if (const auto* profile = std::get_if<Profile>(&rep_)) {
      if (eps > 1) return Rational(0);
      return Rational(floor_eval(*profile, -2 * ceil_log2(eps)));
    }
    const auto& points = std::get<std::vector<Breakpoint>>(rep_);
    if (eps > points.front().eps) return Rational(0);
    // points sorted by decreasing eps: find the last j with eps_j >= eps.
    std::size_t j = 0;
    while (j + 1 < points.size() && points[j + 1].eps >= eps) ++j;
    return points[j].value;
  }

  const Profile* profile() const { return std::get_if<Profile>(&rep_); }

 private:
  explicit AperiodicityBound(Profile p) : rep_(std::move(p)) {}
  explicit AperiodicityBound(std::vector<Breakpoint> b) : rep_(std::move(b)) {}
  std::variant<Profile, std::vector<Breakpoint>> rep_;
};

/// Time bound for eps-returns implied by phi-aperiodicity.
inline AperiodicityBound phi_to_F(const Profile& profile) { return AperiodicityBound::from_profile(profile); }

/// phi(l) = F(2^-(floor(l/2) - 1)) for l = 0..l_max, held constant beyond.
inline Profile F_to_phi(const AperiodicityBound& bound, std::int64_t l_max) {
  if (l_max < 0) fail(ErrorCode::InvalidArgument, "l_max must be non-negative");
  std::vector<Rational> values;
  for (std::int64_t l = 0; l <= l_max; ++l) {
    const std::int64_t e = l / 2 - 1;  // eps = 2^-e
    const Rational eps = e >= 0 ? Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(e))
                                : Rational(BigInt(1) << static_cast<unsigned>(-e));
    values.push_back(bound(eps));
  }
  return Profile::table(std::move(values));
}

/// Outcome of a window comparison check; `i` and `s` locate the first failure.
struct DistanceCheck {
  bool ok = true;
  std::int64_t checks = 0;
  std::int64_t i = 0;          // time of the failure (1-based)
  std::int64_t s = 0;          // shift or period
  std::int64_t agreement = 0;  // agreement radius found there
};

/// For every pair of times i and i+s within w whose centred windows agree to
/// radius a >= 1 (with 2a <= l_max), checks s > F(2^-(a-1)); since
/// d(T^i w, T^{i+s} w) = 2^-a < 2^-(a-1) this is the time bound at the
/// largest dyadic eps the distance stays below.
inline DistanceCheck forward_return_time_check(const FiniteWord& w, const Profile& profile, std::int64_t l_max) {
  const auto F = phi_to_F(profile);
  const auto m = static_cast<std::int64_t>(w.length());
  auto sym = w.symbols();
  DistanceCheck out;
  const std::int64_t a_max = l_max / 2;
  for (std::int64_t s = 1; s < m; ++s) {
    for (std::int64_t c = 0; c + s < m; ++c) {  // 0-based centres c and c+s
      if (sym[static_cast<std::size_t>(c)] != sym[static_cast<std::size_t>(c + s)]) continue;
      std::int64_t a = 0;
      while (a < a_max && c - a - 1 >= 0 && c + s + a + 1 < m &&
             sym[static_cast<std::size_t>(c - a - 1)] == sym[static_cast<std::size_t>(c + s - a - 1)] &&
             sym[static_cast<std::size_t>(c + a + 1)] == sym[static_cast<std::size_t>(c + s + a + 1)])
        ++a;
      if (a == 0) continue;
      ++out.checks;
      const Rational eps(BigInt(1), BigInt(1) << static_cast<unsigned>(a - 1));
      if (!(Rational(s) > F(eps))) {
        out.ok = false;
        out.i = c + 1;
        out.s = s;
        out.agreement = a;
        return out;
      }
    }
  }
  return out;
}

struct PeriodicCheckOptions {
  // All k^s periodic words are tried while k^s stays below this cap; above it
  // only periodic extensions of blocks of w near the sampled time are tried.
  std::uint64_t enumerate_cap = 4096;
};

/// For each sampled time i checks d(T^i w, v) > 2^-((s + l(s))/2) for the
/// periodic words v of period s, i.e. that the agreement radius a of the two
/// centred windows satisfies 2a < s + l(s). Windows of radius
/// floor((s + l(s))/2) + 1 suffice to decide this.
inline DistanceCheck periodic_distance_check(const FiniteWord& w, std::int64_t s, const Profile& profile,
                                             const std::vector<std::int64_t>& sample_times,
                                             const PeriodicCheckOptions& options = {}) {
  if (s < 1) fail(ErrorCode::InvalidArgument, "period must be positive");
  const std::int64_t ell = right_inverse(profile, BigInt(s));
  const std::int64_t threshold = s + ell;  // pass iff 2a < threshold
  const std::int64_t r = threshold / 2 + 1;
  const auto m = static_cast<std::int64_t>(w.length());
  const int k = w.k();
  auto sym = w.symbols();

  // Agreement radius around centre c (0-based) with the periodic word whose
  // value at offset j from the centre is period[(j + phase) mod s].
  auto agreement = [&](std::int64_t c, const std::vector<int>& period, std::int64_t phase) -> std::int64_t {
    auto v = [&](std::int64_t j) { return period[static_cast<std::size_t>(((j + phase) % s + s) % s)]; };
    if (sym[static_cast<std::size_t>(c)] != v(0)) return -1;
    std::int64_t a = 0;
    while (a < r && sym[static_cast<std::size_t>(c - a - 1)] == v(-a - 1) &&
           sym[static_cast<std::size_t>(c + a + 1)] == v(a + 1))
      ++a;
    return a;
  };

  std::uint64_t total = 1;
  bool enumerate = true;
  for (std::int64_t j = 0; j < s && enumerate; ++j) {
    total *= static_cast<std::uint64_t>(k);
    enumerate = total <= options.enumerate_cap;
  }

  DistanceCheck out;
  for (std::int64_t i : sample_times) {
    const std::int64_t c = i - 1;
    if (c - r < 0 || c + r >= m)
      fail(ErrorCode::WindowTooSmall, "time " + std::to_string(i) + " needs radius " + std::to_string(r) +
                                          " inside a word of length " + std::to_string(m));
    auto record = [&](std::int64_t a) {
      ++out.checks;
      if (2 * a >= threshold && out.ok) {
        out.ok = false;
        out.i = i;
        out.s = s;
        out.agreement = a;
      }
    };
    if (enumerate) {
      std::vector<int> period(static_cast<std::size_t>(s), 0);
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (auto& p : period) {
          p = static_cast<int>(x % static_cast<std::uint64_t>(k));
          x /= static_cast<std::uint64_t>(k);
        }
        record(agreement(c, period, 0));
      }
    } else {
      // A periodic word agreeing with w on [c-a, c+a] with 2a+1 >= s is the
      // periodic extension of the block of w starting at c-a.
      for (std::int64_t a0 = 0; a0 <= r; ++a0) {
        std::vector<int> period(static_cast<std::size_t>(s));
        for (std::int64_t j = 0; j < s; ++j) {
          const std::int64_t pos = c - a0 + j;
          period[static_cast<std::size_t>(j)] = pos < m ? sym[static_cast<std::size_t>(pos)] : 0;
        }
        record(agreement(c, period, a0));
      }
    }
    if (!out.ok) return out;
  }
  return out;
}

}  // namespace aperiodic
