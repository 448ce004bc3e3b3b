// SPDX-License-Identifier: Apache-2.0
// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aperiodic/aperiodic.hpp"

namespace {

using namespace aperiodic;

Rational R(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  Outcome& outcome() { return out_; }

 private:
  Outcome out_;
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.pass && secs >= limit_s) o = {false, "runtime " + std::to_string(secs) + " s over " + std::to_string(limit_s) + " s"};
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << " s]";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

// Words over k symbols of length m, passed to f as digit vectors.
template <class F>
void for_all_words(int k, int m, F&& f) {
  std::vector<int> w(static_cast<std::size_t>(m), 0);
  for (;;) {
    f(w);
    int j = m - 1;
    while (j >= 0 && w[static_cast<std::size_t>(j)] == k - 1) w[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) return;
    ++w[static_cast<std::size_t>(j)];
  }
}

// Direct filter: for each pair of start positions, the longest agreeing run
// decides whether some window recurs too soon (floor phi is non-decreasing).
bool good_by_filter(const std::vector<int>& w, const std::vector<BigInt>& floor_phi) {
  const int m = static_cast<int>(w.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int run = 0;
      while (j + run < m && w[static_cast<std::size_t>(i + run)] == w[static_cast<std::size_t>(j + run)]) ++run;
      if (run > 0 && BigInt(j - i) <= floor_phi[static_cast<std::size_t>(run - 1)]) return false;
    }
  return true;
}

// The criterion-4 word and its gauge, shared with criterion 9.
struct Criterion4Word {
  FiniteWord word{Alphabet(4)};
  Profile gauge = Profile::linear();
  std::int64_t l0 = 0;
  bool built = false;
};

Criterion4Word& c4() {
  static Criterion4Word w;
  return w;
}

}  // namespace

int main() {
  run(1, "remark cases give margins exactly 1 and 0", 1.0, [] {
    Checker ch;
    auto a = condition_3_2(4, Profile::linear(), R(2));
    auto b = condition_3_2(5, Profile::power_of_two(), R(3));
    ch.expect(a.exact() && *a.exact_margin() == 1, "k=4 linear margin " + to_fraction_string(a.margin_lo));
    ch.expect(b.exact() && *b.exact_margin() == 0, "k=5 pow2 margin " + to_fraction_string(b.margin_lo));
    return ch.outcome();
  });

  run(2, "counting sandwich exact >= bound >= 2^m for k=4 linear m<=12", 60.0, [] {
    Checker ch;
    const auto p = Profile::linear();
    auto exact = count_good_words(4, p, 12);
    auto bound = lower_bound_ledger(4, p, 12, R(2));
    ch.expect(bound.m0 && *bound.m0 == 3, "m0 is not 3");
    for (std::int64_t m = 0; m <= 12; ++m) {
      const auto& e = *exact.rows[static_cast<std::size_t>(m)].exact;
      const auto& b = *bound.rows[static_cast<std::size_t>(m)].bound;
      const BigInt two_m = pow_int(BigInt(2), static_cast<std::uint64_t>(m));
      ch.expect(e >= b && b >= two_m, "m=" + std::to_string(m) + " exact " + e.str() + " bound " + b.str());
      if (m < 3) ch.expect(e == pow_int(BigInt(4), static_cast<std::uint64_t>(m)), "exact != 4^m below m0");
    }
    return ch.outcome();
  });

  run(3, "pruned counts equal filter-all-words counts, k in {2,3}, m<=12", 120.0, [] {
    Checker ch;
    for (int k : {2, 3}) {
      const Profile profiles[] = {Profile::linear(), Profile::power_of_two(), Profile::exponential(BigInt(k), R(1, 2))};
      for (const auto& p : profiles) {
        std::vector<BigInt> floor_phi;
        for (std::int64_t l = 0; l <= 12; ++l) floor_phi.push_back(floor_eval(p, l));
        auto ledger = count_good_words(k, p, 12);
        for (int m = 0; m <= 12; ++m) {
          std::int64_t n = 0;
          for_all_words(k, m, [&](const std::vector<int>& w) { n += good_by_filter(w, floor_phi); });
          const auto& e = *ledger.rows[static_cast<std::size_t>(m)].exact;
          ch.expect(e == n, "k=" + std::to_string(k) + " " + format_profile(p) + " m=" + std::to_string(m) + ": " +
                                e.str() + " vs " + std::to_string(n));
        }
      }
    }
    return ch.outcome();
  });

  run(4, "k=4 delta=3/10: constructed length-1024 word has R(l) > floor(4^(0.3 l)) for l >= l0", 120.0, [] {
    Checker ch;
    const auto phi = Profile::exponential(BigInt(4), R(3, 10));
    auto d = derive_theorem_1_1(4, R(3, 10), phi, {0, R(31, 100)});
    ch.expect(d.report.satisfied(), "surrogate fails the sufficiency condition");
    auto& shared = c4();
    shared.word = construct_word(4, d.surrogate, 1024);
    shared.gauge = d.surrogate;
    shared.l0 = d.l0;
    shared.built = true;
    ch.expect(shared.word.length() == 1024, "word length " + std::to_string(shared.word.length()));
    auto table = min_recurrence_time(shared.word, 1023);
    std::int64_t attained = 0;
    for (std::int64_t l = d.l0; l <= 1023; ++l) {
      if (!table(l)) continue;
      ++attained;
      ch.expect(BigInt(*table(l)) > floor_eval(phi, l), "R(" + std::to_string(l) + ") = " + std::to_string(*table(l)));
    }
    std::ostringstream note;
    note << "c=" << to_fraction_string(d.c) << " l0=" << d.l0 << " attained l>=l0: " << attained;
    if (ch.outcome().pass) ch.outcome().detail = note.str();
    return ch.outcome();
  });

  run(5, "Morse-Thue: 2^12 prefix overlap-free, squares of 2^n-symbol blocks for n=2..10, digit sums < 2^16", 30.0, [] {
    Checker ch;
    const auto prefix = morse_thue_window(0, (1 << 12) - 1);
    ch.expect(verify_phi_aperiodic(prefix, Profile::linear()).ok(), "prefix fails linear gauge");
    auto table = min_recurrence_time(prefix, 1100);
    for (int n = 2; n <= 10; ++n) {
      const std::int64_t h = std::int64_t{1} << n;
      auto pos = find_square(prefix, h);
      ch.expect(pos.has_value(), "no square with block 2^" + std::to_string(n));
      if (pos) {
        for (std::int64_t j = 0; j < h; ++j)
          ch.expect(prefix.at(static_cast<std::size_t>(*pos + j)) == prefix.at(static_cast<std::size_t>(*pos + h + j)),
                    "square check failed");
      }
      // A window with index l = 2^n - 1 holds 2^n symbols.
      ch.expect(table(h - 1) && *table(h - 1) <= h, "R(2^n - 1) > 2^n at n=" + std::to_string(n));
    }
    const auto w = morse_thue_prefix(1u << 16);
    for (std::uint64_t i = 0; i < w.size(); ++i)
      if (w[i] != digit_sum_parity(i)) {
        ch.expect(false, "digit sum mismatch at " + std::to_string(i));
        break;
      }
    return ch.outcome();
  });

  run(6, "golden ratio: badness in [0.3819, 0.3820] at q=1, F_c true at 7/20, false at 2/5, Fibonacci -> 1/sqrt5", 30.0,
      [] {
        Checker ch;
        const auto golden = ContinuedFraction::parse("1;(1)");
        auto b = badness_profile(golden, 100000);
        ch.expect(b.argmin == 1, "argmin " + std::to_string(b.argmin));
        ch.expect(b.value.lo >= R(3819, 10000) && b.value.hi <= R(3820, 10000), "badness outside [0.3819, 0.3820]");
        // (3 - sqrt 5)/2 inside [lo, hi]: with t = 3 - 2x, x <= value iff t >= sqrt 5.
        const Rational tlo = 3 - 2 * b.value.lo, thi = 3 - 2 * b.value.hi;
        ch.expect(tlo >= 0 && tlo * tlo >= 5 && (thi <= 0 || thi * thi <= 5), "(3 - sqrt5)/2 not enclosed");
        auto yes = is_Fc_aperiodic_at_zero(golden, R(7, 20), 100000);
        ch.expect(yes.aperiodic, "7/20 reported false");
        auto no = is_Fc_aperiodic_at_zero(golden, R(2, 5), 100000);
        ch.expect(!no.aperiodic && no.witness && *no.witness == 1, "2/5 not refuted at q=1");
        auto conv = convergents(golden, 40);
        std::size_t last = 0;
        for (std::size_t j = 0; j < conv.size() && conv[j].q <= 100000; ++j) last = j;
        auto v = convergent_badness(golden, last);
        const double target = 1 / std::sqrt(5.0);
        ch.expect(std::fabs(v.lo.convert_to<double>() - target) < 1e-4 && std::fabs(v.hi.convert_to<double>() - target) < 1e-4,
                  "Fibonacci q=" + conv[last].q.str() + " off by more than 1e-4");
        return ch.outcome();
      });

  run(7, "l-laws on 1000 random unbounded tables x 100 (s, l) pairs", 10.0, [] {
    Checker ch;
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000 && ch.outcome().pass; ++t) {
      std::vector<Rational> values;
      Rational v(0);
      const int len = 1 + static_cast<int>(rng() % 16);
      for (int j = 0; j < len; ++j) {
        v += Rational(BigInt(rng() % 9), BigInt(1 + rng() % 4));
        values.push_back(v);
      }
      const Rational step(BigInt(1 + rng() % 7), BigInt(1 + rng() % 5));
      const auto p = Profile::table(values, step);
      // Plain evaluation: table entry, then linear growth by step past the end.
      auto phi = [&](std::int64_t l) {
        if (l < len) return values[static_cast<std::size_t>(l)];
        return Rational(values.back() + step * (l - len + 1));
      };
      for (int pair = 0; pair < 100; ++pair) {
        const std::int64_t s = 1 + static_cast<std::int64_t>(rng() % 200);
        const std::int64_t l = static_cast<std::int64_t>(rng() % 200);
        const std::int64_t ell = right_inverse(p, BigInt(s));
        const Rational S(s);
        ch.expect(phi(ell) >= S, "phi(l(s)) < s");
        ch.expect((l < ell) == (phi(l) < S), "l < l(s) law");
        ch.expect((l >= ell) == (phi(l) >= S), "l >= l(s) law");
        if (ell > 0) ch.expect(phi(ell - 1) < S, "l(s) not least");
      }
    }
    return ch.outcome();
  });

  run(8, "hyperbolic pipeline (n=2, delta=1/2, i_M=1.5, eps0=1/4) and sharp cbar <= rough bound on the grid", 10.0, [] {
    Checker ch;
    auto r = theorem_4_3_pipeline(2, R(1, 2), R(3, 2), R(1, 4));
    const Interval delta = Interval::from_rational(R(1, 2));
    ch.expect(certainly_less(r.r0.value + r.eps0, r.i_M), "r0 + eps0 < i_M not certified");
    ch.expect(certainly_less(delta, r.delta_tilde.value) && r.delta_tilde.value.hi < 1, "delta < delta_tilde < 1");
    const auto dq = denominator_of(r.delta_bar).convert_to<std::uint64_t>();
    const auto dp = numerator_of(r.delta_bar).convert_to<std::uint64_t>();
    // U >= 2^delta_bar exactly, and U < c < 2.
    ch.expect(pow_rat(r.two_pow_upper, dq) >= Rational(pow_int(BigInt(2), dp)), "U is not an upper bound");
    ch.expect(r.two_pow_upper < r.c && r.c < 2, "2^delta_bar < c < 2 fails");
    ch.expect(r.feasibility.satisfied(), "conditions fail at the found shift");
    ch.expect(r.l0.value.lo >= static_cast<double>(r.l1), "l0 < l1");
    // c(l+1) - c(l) = r0 e^(-delta_tilde l) (1 - e^(-delta_tilde)), enclosed directly
    // since the difference of the rounded values vanishes in doubles past l ~ 70.
    const Interval one(1.0);
    for (std::int64_t l = r.l1; l < r.l1 + 1000; ++l) {
      const Interval L(static_cast<double>(l));
      const Interval step = r.r0.value * exp(-(r.delta_tilde.value * L)) * (one - exp(-r.delta_tilde.value));
      ch.expect(step.lo > 0, "c(delta_tilde, l) increment not positive at l=" + std::to_string(l));
      if (l < r.l1 + 40) {
        const auto at = [&](std::int64_t x) {
          return psi_coefficient(r.r0.value, r.delta_bar, r.delta_tilde.value, 2, Interval(static_cast<double>(x)));
        };
        ch.expect(certainly_less(at(l), at(l + 1)), "c(delta_tilde, l) not increasing at l=" + std::to_string(l));
      }
    }
    for (const auto* t : {&r.delta_tilde, &r.r0, &r.eps_bar0, &r.s0, &r.N, &r.c_l1, &r.ln_c0, &r.l0, &r.l0_tilde})
      ch.expect(relative_width(t->value) < 1e-9, t->formula + " too wide");
    std::ostringstream note;
    note << "s_bar0=" << r.s_bar0 << " cbar=" << r.cbar << "/" << r.rough.value << ";";
    for (int n : {2, 3})
      for (const Rational& im : {R(4, 5), R(3, 2), R(3)}) {
        const Rational eps0 = (im - R(693148, 1000000)) / 4;
        auto g = theorem_4_3_pipeline(n, R(1, 2), im, eps0);
        ch.expect(g.feasibility.satisfied(), "grid point infeasible");
        ch.expect(g.cbar <= g.rough.value, "sharp cbar above rough bound");
        note << " " << g.cbar << "/" << g.rough.value;
      }
    if (ch.outcome().pass) ch.outcome().detail = note.str();
    return ch.outcome();
  });

  run(9, "forward and periodic distance checks on the criterion-4 word", 60.0, [] {
    Checker ch;
    auto& shared = c4();
    if (!shared.built) {
      const auto phi = Profile::exponential(BigInt(4), R(3, 10));
      auto d = derive_theorem_1_1(4, R(3, 10), phi, {0, R(31, 100)});
      shared.word = construct_word(4, d.surrogate, 1024);
      shared.gauge = d.surrogate;
      shared.built = true;
    }
    const auto& w = shared.word;
    auto fwd = forward_return_time_check(w, shared.gauge, 20);
    ch.expect(fwd.ok, "forward check fails at i=" + std::to_string(fwd.i) + " s=" + std::to_string(fwd.s));
    std::mt19937 rng(9);
    std::int64_t checks = fwd.checks;
    for (std::int64_t s = 1; s <= 6; ++s) {
      const std::int64_t r = (s + right_inverse(shared.gauge, BigInt(s))) / 2 + 1;
      std::uniform_int_distribution<std::int64_t> pick(r + 1, static_cast<std::int64_t>(w.length()) - r);
      std::vector<std::int64_t> times;
      for (int j = 0; j < 100; ++j) times.push_back(pick(rng));
      auto v = periodic_distance_check(w, s, shared.gauge, times);
      ch.expect(v.ok, "periodic check fails at s=" + std::to_string(s) + " i=" + std::to_string(v.i));
      checks += v.checks;
    }
    if (ch.outcome().pass) ch.outcome().detail = std::to_string(checks) + " comparisons, 0 violations";
    return ch.outcome();
  });

  return failures == 0 ? 0 : 1;
}
