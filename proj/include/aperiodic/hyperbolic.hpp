// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aperiodic/condition.hpp"
#include "aperiodic/error.hpp"
#include "aperiodic/interval.hpp"
#include "aperiodic/numeric.hpp"
#include "aperiodic/profile.hpp"

namespace aperiodic {

/// Relative width, the precision measure used for large constants.
inline double relative_width(const Interval& x) {
  const double scale = std::max(1.0, std::max(std::fabs(x.lo), std::fabs(x.hi)));
  return x.width() / scale;
}

inline Interval to_interval(const BigInt& z) { return Interval::from_integer(z); }

/// mu(t) = e^t mu(0): scale factor of horospherical lengths after flowing t.
inline Interval horosphere_scale(const Interval& t) { return exp(t); }

/// Horospherical distance between points at hyperbolic distance d on a
/// common horosphere, and its inverse.
inline Interval horo_chord(const Interval& d) {
  if (d.lo < 0) fail(ErrorCode::InvalidArgument, "distance must be non-negative");
  return Interval(2.0) * sinh(d / Interval(2.0));
}
inline Interval horo_chord_inverse(const Interval& h) {
  if (h.lo < 0) fail(ErrorCode::InvalidArgument, "horospherical distance must be non-negative");
  return Interval(2.0) * asinh(h / Interval(2.0));
}

/// int_0^r sinh(t)^m dt by the reduction
/// J_m = sinh^(m-1) cosh / m - (m-1)/m J_(m-2), J_0 = r, J_1 = cosh r - 1.
/// Ball volumes in H^n are proportional to J_(n-1); the constant cancels in ratios.
inline Interval sinh_power_integral(unsigned m, const Interval& r) {
  if (r.lo < 0) fail(ErrorCode::InvalidArgument, "radius must be non-negative");
  const Interval sh = sinh(r), ch = cosh(r);
  Interval even = r, odd = ch - Interval(1.0);
  if (m == 0) return even;
  if (m == 1) return odd;
  Interval prev2 = (m % 2 == 0) ? even : odd;
  for (unsigned j = (m % 2 == 0) ? 2 : 3; j <= m; j += 2) {
    const Interval jj(static_cast<double>(j));
    prev2 = pow(sh, j - 1) * ch / jj - Interval(static_cast<double>(j - 1)) / jj * prev2;
  }
  // The integrand is non-negative; drop rounding below zero.
  prev2.lo = std::max(prev2.lo, 0.0);
  return prev2;
}

/// Parameters of the discrete geodesic setting.
struct HyperbolicParams {
  int n = 2;
  Interval i_M;
  Interval eps_bar0;
  Interval r0;
  BigInt s_bar0 = 0;
  Interval R = Interval(1.0);
  Rational delta;

  /// ln 2 < r0 < eps_bar0 < i_M, each strict inequality certain.
  void validate() const {
    if (n < 2) fail(ErrorCode::InvalidArgument, "dimension n must be at least 2");
    if (!(certainly_less(Interval::ln2(), r0) && certainly_less(r0, eps_bar0) && certainly_less(eps_bar0, i_M)))
      fail(ErrorCode::ParameterOrderViolated, "need ln 2 < r0 < eps_bar0 < i_M");
    if (!(R.lo > 0)) fail(ErrorCode::InvalidArgument, "cube edge R must be positive");
  }
};

struct ShiftConstants {
  BigInt s;
  std::int64_t ell_bar = 0;
  Interval r1;
  Interval r2;
  IntegerBound c1;
  IntegerBound c2;
};

struct GeometryConstants {
  std::vector<ShiftConstants> per_shift;  // s = s_bar0 + 1, s_bar0 + 2, ...
  std::int64_t cbar = 0;                  // c1(s_bar0 + 1) * c2(s_bar0 + 1)
  bool cbar_straddles = false;
};

namespace detail {

inline Interval sqrt_n1(int n) { return sqrt(Interval(static_cast<double>(n - 1))); }

inline Interval big_to_interval(const BigInt& z) { return Interval::from_integer(z); }

}  // namespace detail

/// r1, r2, c1, c2 at shift s for the discrete gauge phibar.
inline ShiftConstants shift_constants(const HyperbolicParams& p, const Profile& phibar, const BigInt& s) {
  const std::int64_t ell = right_inverse(phibar, s);
  if (!(BigInt(ell) < s))
    fail(ErrorCode::Condition43Violated,
         "l(s) = " + std::to_string(ell) + " is not below s = " + s.str() + "; the growth condition fails");
  const Interval S = detail::big_to_interval(s);
  const Interval one(1.0), two(2.0), four(4.0);
  const Interval root = detail::sqrt_n1(p.n);
  const auto m = static_cast<unsigned>(p.n - 1);
  ShiftConstants out;
  out.s = s;
  out.ell_bar = ell;
  const Interval shrink1 = exp(-(S - one - Interval(static_cast<double>(ell))) * p.r0);
  out.r1 = two * sinh(p.eps_bar0 + asinh(shrink1 * root * p.R / two));
  out.c1 = ceil_upper(pow(out.r1 + root * p.R, m) / pow(p.R, m));
  const Interval shrink2 = exp(-(S - one) * p.r0);
  out.r2 = two * asinh(shrink2 * root * p.R / four);
  const Interval outer = two * asinh(exp(p.r0) * root * p.R / four) + out.r2 + p.eps_bar0;
  out.c2 = ceil_upper(sinh_power_integral(m, outer) / sinh_power_integral(m, p.i_M / two));
  return out;
}

/// Constants for s = s_bar0 + 1 .. s_bar0 + probes; c-bar is taken at s_bar0 + 1.
inline GeometryConstants geometry_constants(const HyperbolicParams& p, const Profile& phibar, int probes = 1) {
  p.validate();
  if (probes < 1) fail(ErrorCode::InvalidArgument, "need at least one probed shift");
  GeometryConstants out;
  for (int j = 1; j <= probes; ++j) out.per_shift.push_back(shift_constants(p, phibar, p.s_bar0 + j));
  const auto& first = out.per_shift.front();
  out.cbar = first.c1.value * first.c2.value;
  out.cbar_straddles = first.c1.straddles || first.c2.straddles;
  return out;
}

/// Upper bound for c-bar independent of s_bar0:
/// ceil((3 cosh(i_M) sqrt(n+1))^(n-1)) * ceil(J(sqrt(5 i_M + 4 ln(sqrt(n+1)/2))) / J(i_M/2)).
struct RoughBound {
  IntegerBound first;
  IntegerBound second;
  std::int64_t value = 0;
};

inline RoughBound rough_cbar_bound(int n, const Interval& i_M) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "dimension n must be at least 2");
  if (!(i_M.lo > 0)) fail(ErrorCode::InvalidArgument, "injectivity radius must be positive");
  const auto m = static_cast<unsigned>(n - 1);
  const Interval root = sqrt(Interval(static_cast<double>(n + 1)));
  RoughBound out;
  out.first = ceil_upper(pow(Interval(3.0) * cosh(i_M) * root, m));
  const Interval radicand = Interval(5.0) * i_M + Interval(4.0) * log(root / Interval(2.0));
  if (!(radicand.lo > 0)) fail(ErrorCode::InvalidArgument, "integration limit is not real for these parameters");
  out.second = ceil_upper(sinh_power_integral(m, sqrt(radicand)) / sinh_power_integral(m, i_M / Interval(2.0)));
  out.value = out.first.value * out.second.value;
  return out;
}

/// Outcome of checking both feasibility conditions for one s_bar0.
struct FeasibilityReport {
  // floor phibar(l) > l for all l >= s_bar0, and l(s_bar0) >= 1.
  bool growth_ok = false;
  std::optional<std::int64_t> growth_failure;  // first failing l, if any
  std::int64_t ell_bar_s0 = 0;
  std::int64_t certified_from = 0;  // induction covers every l from here on
  // 2^(n-1) - cbar * sum_{l >= l(s_bar0)} D_l / c^l - c lies in [lo, hi].
  Rational margin_lo;
  Rational margin_hi;
  ConditionStatus sum_status = ConditionStatus::Unknown;
  bool satisfied() const { return growth_ok && sum_status == ConditionStatus::Satisfied; }
};

namespace detail {

// Growth rate a with floor phibar(l) ~ a^l for closed-form exponentials, as a
// rational lower bound; nullopt for kinds without such a certificate.
inline std::optional<Rational> exponential_rate_lower(const Profile& phibar, std::int64_t& threshold) {
  return std::visit(overloaded{
                        [&](const ExponentialProfile& e) -> std::optional<Rational> {
                          return pow_frac_bounds(e.base, e.p, e.q, 64).lo;
                        },
                        [&](const PowerOfTwoProfile&) -> std::optional<Rational> { return Rational(2); },
                        [&](const ThresholdedProfile& t) -> std::optional<Rational> {
                          threshold = std::max(threshold, t.l0 + 1);
                          return exponential_rate_lower(*t.inner, threshold);
                        },
                        [&](const auto&) -> std::optional<Rational> { return std::nullopt; },
                    },
                    phibar.kind());
}

}  // namespace detail

/// Checks floor phibar(l) > l for all l >= s_bar0 together with l(s_bar0) >= 1,
/// and evaluates 2^(n-1) - cbar * sum_{l >= l(s_bar0)} D_l / c^l >= c exactly.
inline FeasibilityReport check_conditions_4_3_4_4(int n, const BigInt& s_bar0, const Profile& phibar,
                                                  const Rational& c, std::int64_t cbar) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "dimension n must be at least 2");
  const Rational top(BigInt(1) << static_cast<unsigned>(n - 1));
  if (!(c > 1 && c < top)) fail(ErrorCode::COutOfRange, "c must satisfy 1 < c < 2^(n-1)");
  if (std::holds_alternative<TableProfile>(phibar.kind()))
    fail(ErrorCode::NoTailBound, "table gauges carry no certified growth for the tail");
  if (is_bounded(phibar)) fail(ErrorCode::BoundedProfile, "gauge must be unbounded");
  if (s_bar0 < 0) fail(ErrorCode::InvalidArgument, "s_bar0 must be non-negative");

  FeasibilityReport out;
  // Growth: once a^L >= L + 1 and a >= (L+2)/(L+1), induction gives
  // a^l >= l + 1 for all l >= L, hence floor phibar(l) >= l + 1.
  std::int64_t threshold = 0;
  auto rate = detail::exponential_rate_lower(phibar, threshold);
  if (!rate) {
    // Linear-type gauges: floor phibar(l) > l fails at once for Linear.
    out.growth_ok = false;
    out.growth_failure = s_bar0 < BigInt(std::numeric_limits<std::int64_t>::max())
                             ? s_bar0.convert_to<std::int64_t>()
                             : std::numeric_limits<std::int64_t>::max();
  } else {
    std::int64_t L = threshold;
    while (!(*rate * Rational(L + 1) >= Rational(L + 2))) ++L;
    out.growth_ok = true;
    if (s_bar0 <= L) {
      const auto from = s_bar0.convert_to<std::int64_t>();
      // Extend L until the exact power also clears L + 1.
      std::int64_t l = from;
      for (;; ++l) {
        const bool holds = floor_eval(phibar, l) > l;
        if (!holds) {
          out.growth_ok = false;
          out.growth_failure = l;
          break;
        }
        if (l >= L && Rational(floor_eval(phibar, l)) >= Rational(l + 1) &&
            pow_rat(*rate, static_cast<std::uint64_t>(l)) >= Rational(l + 1))
          break;
      }
      out.certified_from = l;
    } else {
      // Past L the induction needs a^l >= l + 1 at some l <= s_bar0; find one.
      std::int64_t l = L;
      while (!(pow_rat(*rate, static_cast<std::uint64_t>(l)) >= Rational(l + 1))) ++l;
      out.certified_from = l;
      if (BigInt(l) > s_bar0) {
        for (std::int64_t j = s_bar0.convert_to<std::int64_t>(); j < l; ++j)
          if (!(floor_eval(phibar, j) > j)) {
            out.growth_ok = false;
            out.growth_failure = j;
            break;
          }
      }
    }
  }

  out.ell_bar_s0 = s_bar0 == 0 ? 0 : right_inverse(phibar, s_bar0);
  if (out.ell_bar_s0 < 1) {
    out.growth_ok = false;
    if (!out.growth_failure) out.growth_failure = 0;
  }

  // Sum from l(s_bar0) >= 1 (from 1 if the growth check already failed).
  const std::int64_t from = std::max<std::int64_t>(out.ell_bar_s0, 1);
  const Rational cb(cbar);
  for (std::int64_t terms = from + 64;; terms *= 2) {
    auto series = detail::increment_series(phibar, c, terms);
    if (series.kind == IncrementSeries::Kind::Divergent) {
      out.sum_status = ConditionStatus::Unsatisfied;
      return out;
    }
    const Rational head = detail::increment_partial_sum(phibar, c, 1, from - 1);
    out.margin_lo = top - c - cb * (series.hi - head);
    out.margin_hi = top - c - cb * (series.lo - head);
    if (out.margin_lo >= 0) {
      out.sum_status = ConditionStatus::Satisfied;
      return out;
    }
    if (out.margin_hi < 0 || series.kind == IncrementSeries::Kind::Exact) {
      out.sum_status = ConditionStatus::Unsatisfied;
      return out;
    }
    if (terms > 1'000'000) return out;
  }
}

/// c-bar as a function of s_bar0.
using CbarFunction = std::function<std::int64_t(const BigInt& s_bar0)>;

struct ShiftSearchResult {
  BigInt s_bar0;
  std::int64_t cbar = 0;
  FeasibilityReport report;
  std::int64_t evaluations = 0;
};

/// Least s_bar0 satisfying both conditions. Both are monotone in s_bar0 (the
/// tail sum starts later and c-bar does not increase), so the search gallops
/// over powers of two and then bisects.
inline ShiftSearchResult minimal_shift_search(int n, const Profile& phibar, const Rational& c,
                                              const CbarFunction& cbar_fn, unsigned max_bits = 512) {
  ShiftSearchResult out;
  auto passes = [&](const BigInt& s) -> std::optional<std::pair<std::int64_t, FeasibilityReport>> {
    ++out.evaluations;
    // Cheap growth check first; c-bar needs l(s) < s beyond s.
    auto pre = check_conditions_4_3_4_4(n, s, phibar, c, 1);
    if (!pre.growth_ok) return std::nullopt;
    const std::int64_t cbar = cbar_fn(s);
    auto rep = check_conditions_4_3_4_4(n, s, phibar, c, cbar);
    if (!rep.satisfied()) return std::nullopt;
    return std::make_pair(cbar, rep);
  };
  // Gallop: 0, 1, 2, 4, ...
  BigInt lo = -1, hi = 0;
  std::optional<std::pair<std::int64_t, FeasibilityReport>> found;
  for (unsigned bits = 0;; ++bits) {
    if (bits > max_bits)
      fail(ErrorCode::SearchBudgetExceeded, "no feasible s_bar0 below 2^" + std::to_string(max_bits));
    found = passes(hi);
    if (found) break;
    lo = hi;
    hi = hi == 0 ? BigInt(1) : BigInt(hi * 2);
  }
  // Invariant: lo fails (or is -1), hi passes.
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (auto r = passes(mid)) {
      hi = mid;
      found = r;
    } else {
      lo = mid;
    }
  }
  out.s_bar0 = hi;
  out.cbar = found->first;
  out.report = found->second;
  return out;
}

/// A gauge on [0, inf) evaluated with interval arithmetic.
using ContinuousGauge = std::function<Interval(const Interval&)>;

struct ContinuousTranslation {
  ContinuousGauge phi;  // l -> max(r0 phibar((l - r0)/r0) - r0, 0) for l >= r0, 0 below
  Interval s0;          // (s_bar0 + 1) r0
  Interval eps0;        // eps_bar0 - r0
};

/// Discrete gauge and parameters (s_bar0, eps_bar0, r0) to the continuous ones.
inline ContinuousTranslation lemma_4_5_translate(const Profile& phibar, const BigInt& s_bar0,
                                               const Interval& eps_bar0, const Interval& r0) {
  if (!certainly_less(r0, eps_bar0)) fail(ErrorCode::ParameterOrderViolated, "need r0 < eps_bar0");
  if (!(r0.lo > 0)) fail(ErrorCode::ParameterOrderViolated, "need r0 > 0");
  ContinuousTranslation out;
  out.phi = [phibar, r0](const Interval& l) -> Interval {
    if (l.hi < r0.lo) return Interval(0.0);
    Interval arg = (l - r0) / r0;
    arg.lo = std::max(arg.lo, 0.0);
    arg.hi = std::max(arg.hi, 0.0);
    Interval v = r0 * eval_real(phibar, arg) - r0;
    v.lo = std::max(v.lo, 0.0);
    v.hi = std::max(v.hi, 0.0);
    return v;
  };
  out.s0 = (detail::big_to_interval(s_bar0) + Interval(1.0)) * r0;
  out.eps0 = eps_bar0 - r0;
  return out;
}

struct DiscreteTranslation {
  ContinuousGauge phibar;  // l -> phi(l r0) / r0
  BigInt s_bar0;           // ceil(s0 / r0)
  Interval eps_bar0;       // eps0 (unchanged)
  Interval r0;
  bool s_bar0_straddles = false;
};

/// Continuous gauge with parameters (s0, eps0) to the discrete one at step r0 < eps0.
inline DiscreteTranslation lemma_4_5_converse(ContinuousGauge phi, const Interval& s0, const Interval& eps0,
                                              const Interval& r0) {
  if (!certainly_less(r0, eps0)) fail(ErrorCode::ParameterOrderViolated, "need r0 < eps0");
  if (!(r0.lo > 0)) fail(ErrorCode::ParameterOrderViolated, "need r0 > 0");
  DiscreteTranslation out;
  out.phibar = [phi = std::move(phi), r0](const Interval& l) { return phi(l * r0) / r0; };
  const auto ceil = ceil_upper(s0 / r0);
  out.s_bar0 = BigInt(ceil.value);
  out.s_bar0_straddles = ceil.straddles;
  out.eps_bar0 = eps0;
  out.r0 = r0;
  return out;
}

/// A constant with the formula it came from.
struct TaggedInterval {
  Interval value;
  std::string formula;
};

struct Theorem43Report {
  int n = 2;
  Rational delta;
  Interval i_M;
  Interval eps0;
  Rational delta_bar;
  TaggedInterval delta_tilde;
  TaggedInterval r0;
  Rational c;  // rational strictly between 2^(delta_bar (n-1)) and 2^(n-1)
  Rational two_pow_lower;  // rational bracket of 2^(delta_bar (n-1))
  Rational two_pow_upper;
  TaggedInterval eps_bar0;
  BigInt s_bar0;
  std::int64_t cbar = 0;
  RoughBound rough;
  FeasibilityReport feasibility;
  TaggedInterval s0;
  TaggedInterval N;
  std::int64_t l1 = 0;
  TaggedInterval c_l1;     // c(delta_tilde, l1)
  TaggedInterval ln_c0;
  TaggedInterval c0;
  TaggedInterval l0;
  TaggedInterval l0_tilde;
  Profile phibar = Profile::linear();
};

/// c(delta_tilde, l) = r0 / 2^(delta_bar (n-1)) - r0 / e^(delta_tilde (n-1) l).
inline Interval psi_coefficient(const Interval& r0, const Rational& delta_bar, const Interval& delta_tilde, int n,
                                const Interval& l) {
  const Interval n1(static_cast<double>(n - 1));
  const Interval two_pow = exp(Interval::from_rational(delta_bar) * n1 * Interval::ln2());
  return r0 / two_pow - r0 / exp(delta_tilde * n1 * l);
}

struct PipelineOptions {
  unsigned grid_bits = 10;  // delta_bar grid spacing 2^-grid_bits
};

/// Parameter pipeline for continuous aperiodic geodesics with exponent delta.
inline Theorem43Report theorem_4_3_pipeline(int n, const Rational& delta, const Rational& i_M_in,
                                            const Rational& eps0_in, const PipelineOptions& options = {}) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "dimension n must be at least 2");
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (!(eps0_in > 0)) fail(ErrorCode::InvalidArgument, "eps0 must be positive");
  const Interval i_M = Interval::from_rational(i_M_in), eps0 = Interval::from_rational(eps0_in);
  if (!certainly_less(Interval::ln2() + eps0, i_M))
    fail(ErrorCode::Infeasible, "need ln 2 + eps0 < i_M");

  Theorem43Report rep;
  rep.n = n;
  rep.delta = delta;
  rep.i_M = i_M;
  rep.eps0 = eps0;
  const Interval n1(static_cast<double>(n - 1));

  // Smallest delta_bar in {delta} u {j / 2^g} within [delta, 1) meeting both constraints.
  std::vector<Rational> grid{delta};
  const BigInt denom = BigInt(1) << options.grid_bits;
  for (BigInt j = ceil_of(delta * Rational(denom)); j < denom; ++j) {
    Rational g(j, denom);
    if (g > delta) grid.push_back(g);
  }
  bool chosen = false;
  for (const auto& db : grid) {
    const Interval r0 = log(Interval(3.0) - Interval::from_rational(db));
    const Interval dt = Interval::from_rational(db) * Interval::ln2() / r0;
    if (certainly_greater(dt, Interval::from_rational(delta)) && certainly_less(r0 + eps0, i_M) && dt.hi < 1.0) {
      rep.delta_bar = db;
      rep.r0 = {r0, "r0 = ln(3 - delta_bar)"};
      rep.delta_tilde = {dt, "delta_tilde = delta_bar ln 2 / ln(3 - delta_bar)"};
      chosen = true;
      break;
    }
  }
  if (!chosen) fail(ErrorCode::Infeasible, "no delta_bar in [delta, 1) meets delta_tilde > delta and r0 + eps0 < i_M");

  const Interval r0 = rep.r0.value, dt = rep.delta_tilde.value;
  const Rational x = rep.delta_bar * Rational(n - 1);  // phibar(l) = 2^(x l)
  const auto xp = numerator_of(x).convert_to<std::uint64_t>(), xq = denominator_of(x).convert_to<std::uint64_t>();
  const Rational top(BigInt(1) << static_cast<unsigned>(n - 1));
  for (unsigned bits = 16;; bits *= 2) {
    auto b = pow_frac_bounds(BigInt(2), xp, xq, bits);
    rep.two_pow_lower = b.lo;
    rep.two_pow_upper = b.hi;
    if (b.hi < top) break;
  }
  rep.c = (top + rep.two_pow_upper) / 2;
  rep.eps_bar0 = {r0 + eps0, "eps_bar0 = r0 + eps0"};
  rep.phibar = Profile::exponential(BigInt(2), x);

  HyperbolicParams params;
  params.n = n;
  params.i_M = i_M;
  params.eps_bar0 = rep.eps_bar0.value;
  params.r0 = r0;
  params.delta = rep.delta_bar;
  auto cbar_fn = [&](const BigInt& s_bar0) {
    HyperbolicParams q = params;
    q.s_bar0 = s_bar0;
    return geometry_constants(q, rep.phibar).cbar;
  };
  auto search = minimal_shift_search(n, rep.phibar, rep.c, cbar_fn);
  rep.s_bar0 = search.s_bar0;
  rep.cbar = search.cbar;
  rep.feasibility = search.report;
  rep.rough = rough_cbar_bound(n, i_M);

  const Interval s0 = (Interval::from_integer(rep.s_bar0) + Interval(1.0)) * r0;
  rep.s0 = {s0, "s0 = (s_bar0 + 1) r0"};
  const Interval N_real = s0 / (Interval(2.0) * i_M);
  rep.N = {Interval(std::ceil(N_real.lo), std::ceil(N_real.hi)), "N = ceil(s0 / (2 i_M))"};

  // l1: least integer above max(r0, ln(3 - delta_tilde)) with c(delta_tilde, l1) > 0.
  const Interval lower = hull(r0, log(Interval(3.0) - dt));
  std::int64_t l1 = static_cast<std::int64_t>(std::floor(std::max(r0.hi, lower.hi))) + 1;
  while (!(psi_coefficient(r0, rep.delta_bar, dt, n, Interval(static_cast<double>(l1))).lo > 0)) ++l1;
  rep.l1 = l1;
  const Interval c_l1 = psi_coefficient(r0, rep.delta_bar, dt, n, Interval(static_cast<double>(l1)));
  rep.c_l1 = {c_l1, "c(delta_tilde, l1) = r0 / 2^(delta_bar (n-1)) - r0 / e^(delta_tilde (n-1) l1)"};

  const Interval s_prime = Interval(2.0) * i_M;
  const Interval ln_c0 = log(c_l1) - dt * n1 * (Interval(2.0) * s_prime + Interval(2.0) * rep.N.value * s0);
  rep.ln_c0 = {ln_c0, "ln c0 = ln c(delta_tilde, l1) - delta_tilde (n-1) (2 s' + 2 N s0), s' = 2 i_M"};
  rep.c0 = {exp(ln_c0), "c0 = c(delta_tilde, l1) / e^(delta_tilde (n-1) (2 s' + 2 N s0))"};
  const Interval l0_geom = Interval(3.0) * rep.N.value * s0 + Interval(2.0) * i_M;
  const Interval l0{std::max(static_cast<double>(l1), l0_geom.lo), std::max(static_cast<double>(l1), l0_geom.hi)};
  rep.l0 = {l0, "l0 = max(l1, 3 N s0 + 2 i_M)"};
  // c0 e^(dt (n-1) l) >= e^(delta (n-1) l)  <=>  l >= -ln c0 / ((dt - delta)(n-1)).
  const Interval restrict_at = -ln_c0 / ((dt - Interval::from_rational(delta)) * n1);
  rep.l0_tilde = {Interval(std::max(l0.lo, restrict_at.lo), std::max(l0.hi, restrict_at.hi)),
                  "l0_tilde = max(l0, -ln c0 / ((delta_tilde - delta)(n-1)))"};
  return rep;
}

}  // namespace aperiodic
