// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the aperiodic library.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "aperiodic/aperiodic.hpp"
#include "aperiodic/report_io.hpp"

namespace {

using namespace aperiodic;
using io::Json;

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::SearchBudgetExceeded:
    case ErrorCode::DepthExceeded:
    case ErrorCode::PrecisionExhausted:
      return kBudget;
    case ErrorCode::Exhausted:
    case ErrorCode::Infeasible:
    case ErrorCode::Condition43Violated:
      return kFalse;
    default:
      return kUsage;
  }
}

struct Common {
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* sub, Common& c, const std::vector<std::string>& formats) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
}

// Writes to the -o path or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail(ErrorCode::InvalidArgument, "cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

Rational rational_arg(const std::string& text, const std::string& name) {
  auto r = parse_rational(text);
  if (!r) fail(ErrorCode::Parse, "--" + name + ": expected p/q or a decimal, got \"" + text + "\"");
  return *r;
}

// One line of symbols 0-9a-z, optionally preceded by "# k=<int>". Without a
// header (or -k) the alphabet is the smallest one holding every symbol.
FiniteWord read_word_file(const std::string& path, std::optional<int> k_flag) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot read word file " + path);
  std::optional<int> k = k_flag;
  std::string line, symbols;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("k=");
      if (pos != std::string::npos && !k_flag) {
        std::size_t end = pos + 2;
        while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
        if (end == pos + 2) fail(ErrorCode::Parse, path + ": header has k= without a number");
        k = std::stoi(line.substr(pos + 2, end - pos - 2));
      }
      continue;
    }
    if (!symbols.empty()) fail(ErrorCode::Parse, path + ": expected a single line of symbols");
    symbols = line;
  }
  if (!k) {
    int top = 1;
    for (char c : symbols) top = std::max(top, symbol_value(c));
    k = std::max(2, top + 1);
  }
  if (*k < 2 || *k > kMaxAlphabet) fail(ErrorCode::Parse, path + ": alphabet size out of range");
  return FiniteWord::parse(symbols, Alphabet(*k));
}

Json violation_json(const Verdict& v) {
  if (v.ok()) return nullptr;
  return {{"i", v.violation->i}, {"s", v.violation->s}, {"l", v.violation->l}};
}

std::string violation_text(const Violation& v) {
  return "violation i=" + std::to_string(v.i) + " s=" + std::to_string(v.s) + " l=" + std::to_string(v.l);
}

void print_ledger(std::ostream& os, const std::string& format, const CountLedger& ledger, Json inputs,
                  const std::optional<ConditionReport>& cond) {
  if (format == "csv") {
    io::ledger_csv(os, ledger);
    if (cond) std::cerr << "condition: " << to_string(cond->status) << '\n';
  } else if (format == "json") {
    Json result = io::ledger(ledger);
    if (cond) result["condition"] = io::condition(*cond);
    os << io::document("ledger", std::move(inputs), std::move(result)).dump(2) << '\n';
  } else {
    if (cond) os << "# condition " << to_string(cond->status) << '\n';
    if (ledger.m0) os << "# m0 = " << *ledger.m0 << '\n';
    if (ledger.partial) os << "# partial: node budget exhausted\n";
    os << "m\texact\tbound\tc^m\n";
    for (const auto& r : ledger.rows)
      os << r.m << '\t' << (r.exact ? r.exact->str() : "-") << '\t' << (r.bound ? r.bound->str() : "-") << '\t'
         << (r.c_pow_m ? io::rational(*r.c_pow_m) : "-") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aperiodic words: construction, verification, counting and certified constants."};
  app.require_subcommand(1);
  app.footer(std::string("Profile grammar: ") + std::string(kProfileGrammar) +
             "\nExit codes: 0 success/true, 1 verdict false, 2 usage or parse error, 3 budget exhausted."
             "\nWitness words from count/generate are deterministic only with --threads 1.");

  Common common;
  int k = 2;
  std::optional<int> k_opt;
  std::string profile_text = "linear", file, c_text, cf_text;
  std::int64_t len = 0, m_max = 10, l_max = 31, from = 0, to = 15, Q = 1000;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
  int n = 2;
  std::string delta_text = "1/2", im_text = "1.5", eps0_text = "0.25";
  unsigned grid_bits = 10;

  auto* gen = app.add_subcommand("generate", "construct and re-verify a phi-aperiodic word");
  gen->add_option("-k", k, "alphabet size")->required();
  gen->add_option("--profile", profile_text, "gauge phi")->required();
  gen->add_option("--len", len, "word length")->required();
  gen->add_option("--seed", seed, "randomize symbol order with this seed (default lexicographic)");
  gen->add_option("--budget", budget, "search node budget");
  add_common(gen, common, {"text", "json"});

  auto* ver = app.add_subcommand("verify", "check a word file against a gauge");
  ver->add_option("--file", file, "word file")->required();
  ver->add_option("--profile", profile_text, "gauge phi")->required();
  ver->add_option("-k", k_opt, "alphabet size (overrides the file header)");
  add_common(ver, common, {"text", "json"});

  auto* cnt = app.add_subcommand("count", "exact counts of good words");
  cnt->add_option("-k", k, "alphabet size")->required();
  cnt->add_option("--profile", profile_text, "gauge phi")->required();
  cnt->add_option("--m", m_max, "largest length");
  cnt->add_option("--threads", threads, "worker threads");
  cnt->add_option("--budget", budget, "enumeration node budget");
  add_common(cnt, common, {"text", "json", "csv"});

  auto* bnd = app.add_subcommand("bound", "recurrence lower bound next to the exact counts");
  bnd->add_option("-k", k, "alphabet size")->required();
  bnd->add_option("--profile", profile_text, "gauge phi")->required();
  bnd->add_option("--c", c_text, "growth constant c")->required();
  bnd->add_option("--m", m_max, "largest length");
  bnd->add_option("--threads", threads, "worker threads");
  bnd->add_option("--budget", budget, "enumeration node budget");
  add_common(bnd, common, {"text", "json", "csv"});

  auto* cond = app.add_subcommand("condition", "decide the sufficiency condition for (k, phi, c)");
  cond->add_option("-k", k, "alphabet size")->required();
  cond->add_option("--profile", profile_text, "gauge phi")->required();
  cond->add_option("--c", c_text, "growth constant c")->required();
  add_common(cond, common, {"text", "json"});

  auto* rec = app.add_subcommand("recurrence", "minimal recurrence times of a word file");
  rec->add_option("--file", file, "word file")->required();
  rec->add_option("--lmax", l_max, "largest window index l");
  rec->add_option("-k", k_opt, "alphabet size (overrides the file header)");
  add_common(rec, common, {"text", "json", "csv"});

  auto* mt = app.add_subcommand("mt", "Morse-Thue window w(from)..w(to)");
  mt->add_option("--from", from, "first index");
  mt->add_option("--to", to, "last index");
  add_common(mt, common, {"text", "json"});

  auto* rot = app.add_subcommand("rotation", "badness profile and F_c check for a rotation");
  rot->add_option("--cf", cf_text, "continued fraction a0;a1,a2,(period)")->required();
  rot->add_option("--c", c_text, "constant c")->required();
  rot->add_option("--Q", Q, "horizon");
  add_common(rot, common, {"text", "json"});

  auto* hyp = app.add_subcommand("hyperbolic", "certified constants for the geodesic existence argument");
  hyp->add_option("--n", n, "dimension");
  hyp->add_option("--delta", delta_text, "exponent delta in (0, 1)");
  hyp->add_option("--im", im_text, "injectivity radius i_M");
  hyp->add_option("--eps0", eps0_text, "distance constant eps0");
  hyp->add_option("--grid-bits", grid_bits, "dyadic grid for delta_bar is j / 2^bits");
  add_common(hyp, common, {"json", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Sink sink(common.output);
    std::ostream& os = sink.os();

    if (gen->parsed()) {
      const Profile p = parse_profile(profile_text);
      ConstructOptions opts;
      opts.node_budget = budget;
      if (seed) opts.order = SymbolOrder::random(*seed);
      const FiniteWord w = construct_word(k, p, len, opts);
      // Re-run the verifier here so nothing unverified is stamped.
      const Verdict v = verify_phi_aperiodic(w, p);
      if (!v.ok()) {
        std::cerr << "internal error: constructed word fails " << violation_text(*v.violation) << '\n';
        return kFalse;
      }
      if (common.format == "json") {
        Json inputs{{"k", k}, {"profile", format_profile(p)}, {"length", len}};
        inputs["seed"] = seed ? Json(*seed) : Json(nullptr);
        os << io::document("word", inputs, {{"word", w.str()}, {"verified", true}}).dump(2) << '\n';
      } else {
        os << "# k=" << k << " profile=" << format_profile(p) << " verified\n" << w.str() << '\n';
      }
      return kOk;
    }

    if (ver->parsed()) {
      const Profile p = parse_profile(profile_text);
      const FiniteWord w = read_word_file(file, k_opt);
      const Verdict v = verify_phi_aperiodic(w, p);
      if (common.format == "json") {
        Json inputs{{"file", file}, {"k", w.k()}, {"profile", format_profile(p)}, {"length", w.length()}};
        os << io::document("verify", inputs, {{"ok", v.ok()}, {"violation", violation_json(v)}}).dump(2) << '\n';
      } else {
        os << (v.ok() ? "ok" : violation_text(*v.violation)) << '\n';
      }
      return v.ok() ? kOk : kFalse;
    }

    if (cnt->parsed() || bnd->parsed()) {
      const Profile p = parse_profile(profile_text);
      CountOptions opts;
      opts.threads = threads;
      opts.node_budget = budget;
      CountLedger exact = count_good_words_partial(k, p, m_max, opts);
      Json inputs{{"k", k}, {"profile", format_profile(p)}, {"m_max", m_max}, {"threads", threads}};
      std::optional<ConditionReport> report;
      CountLedger shown = exact;
      if (bnd->parsed()) {
        const Rational c = rational_arg(c_text, "c");
        inputs["c"] = io::rational(c);
        if (!is_bounded(p)) report = condition_3_2(k, p, c);
        shown = merge_ledgers(exact, lower_bound_ledger(k, p, m_max, c));
      }
      print_ledger(os, common.format, shown, inputs, report);
      return exact.partial ? kBudget : kOk;
    }

    if (cond->parsed()) {
      const Profile p = parse_profile(profile_text);
      const Rational c = rational_arg(c_text, "c");
      const ConditionReport r = condition_3_2(k, p, c);
      if (common.format == "json") {
        Json inputs{{"k", k}, {"profile", format_profile(p)}, {"c", io::rational(c)}};
        os << io::document("condition", inputs, io::condition(r)).dump(2) << '\n';
      } else {
        os << to_string(r.status) << " (" << to_string(r.tail) << ")";
        if (r.tail != ConditionReport::Tail::Divergent) {
          if (r.exact())
            os << " margin " << io::rational(r.margin_lo);
          else
            os << " margin in [" << io::rational(r.margin_lo) << ", " << io::rational(r.margin_hi) << "]";
        }
        os << '\n';
      }
      return r.satisfied() ? kOk : kFalse;
    }

    if (rec->parsed()) {
      const FiniteWord w = read_word_file(file, k_opt);
      const RecurrenceTable table = min_recurrence_time(w, l_max);
      // Rows with l + 1 = 2^n carry the square bound R(l) <= l + 1.
      auto square_row = [](std::int64_t l) { return std::has_single_bit(static_cast<std::uint64_t>(l + 1)); };
      if (common.format == "json") {
        Json rows = Json::array();
        for (std::int64_t l = 0; l <= l_max; ++l) {
          Json row{{"l", l}, {"R", table(l) ? Json(*table(l)) : Json(nullptr)}};
          if (square_row(l)) row["square_bound"] = table(l) && *table(l) <= l + 1;
          rows.push_back(std::move(row));
        }
        os << io::document("recurrence", {{"file", file}, {"k", w.k()}, {"l_max", l_max}}, {{"rows", rows}}).dump(2)
           << '\n';
      } else {
        const char sep = common.format == "csv" ? ',' : '\t';
        os << "l" << sep << "R" << sep << "square_bound\n";
        for (std::int64_t l = 0; l <= l_max; ++l) {
          os << l << sep << (table(l) ? std::to_string(*table(l)) : "") << sep;
          if (square_row(l)) os << (table(l) && *table(l) <= l + 1 ? "yes" : "no");
          os << '\n';
        }
      }
      return kOk;
    }

    if (mt->parsed()) {
      const FiniteWord w = morse_thue_window(from, to);
      if (common.format == "json")
        os << io::document("morse-thue", {{"from", from}, {"to", to}}, {{"word", w.str()}}).dump(2) << '\n';
      else
        os << w.str() << '\n';
      return kOk;
    }

    if (rot->parsed()) {
      const auto cf = ContinuedFraction::parse(cf_text);
      const Rational c = rational_arg(c_text, "c");
      const BadnessResult b = badness_profile(cf, Q);
      const FcVerdict v = is_Fc_aperiodic_at_zero(cf, c, Q);
      if (common.format == "json") {
        Json result;
        result["badness"] = {{"lo", io::rational(b.value.lo)}, {"hi", io::rational(b.value.hi)},
                             {"argmin", b.argmin}, {"formula", "min_{q<=Q} q ||q alpha||"}};
        result["aperiodic"] = v.aperiodic;
        result["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
        result["horizon"] = v.horizon;
        os << io::document("rotation", {{"cf", cf.str()}, {"c", io::rational(c)}, {"Q", Q}}, result).dump(2) << '\n';
      } else {
        os << (v.aperiodic ? "true" : "false");
        if (v.witness) os << " witness q=" << *v.witness;
        os << "\nbadness in [" << b.value.lo.convert_to<double>() << ", " << b.value.hi.convert_to<double>()
           << "] at q=" << b.argmin << '\n';
      }
      return v.aperiodic ? kOk : kFalse;
    }

    if (hyp->parsed()) {
      const Rational delta = rational_arg(delta_text, "delta");
      const Rational im = rational_arg(im_text, "im");
      const Rational eps0 = rational_arg(eps0_text, "eps0");
      PipelineOptions opts;
      opts.grid_bits = grid_bits;
      const Theorem43Report r = theorem_4_3_pipeline(n, delta, im, eps0, opts);
      // The report is JSON unless text is asked for.
      if (hyp->get_option("--format")->count() == 0 || common.format == "json") {
        Json inputs{{"n", n}, {"delta", io::rational(delta)}, {"i_M", io::rational(im)}, {"eps0", io::rational(eps0)}};
        os << io::document("hyperbolic", inputs, io::theorem_4_3(r)).dump(2) << '\n';
      } else {
        os << "delta_bar " << io::rational(r.delta_bar) << "\nc " << io::rational(r.c) << "\ns_bar0 " << r.s_bar0
           << "\ncbar " << r.cbar << " (rough " << r.rough.value << ")\nl1 " << r.l1 << "\nl0 in [" << r.l0.value.lo
           << ", " << r.l0.value.hi << "]\n";
      }
      return r.feasibility.satisfied() ? kOk : kFalse;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_for(e.code());
  }
  return kUsage;
}
