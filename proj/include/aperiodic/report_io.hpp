// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "aperiodic/aperiodic.hpp"

namespace aperiodic::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Top-level document: {"schema": "aperiodic/<kind>/v1", "inputs": ..., "result": ...}.
inline Json document(const std::string& kind, Json inputs, Json result) {
  Json out;
  out["schema"] = "aperiodic/" + kind + "/v" + std::to_string(kSchemaVersion);
  out["inputs"] = std::move(inputs);
  out["result"] = std::move(result);
  return out;
}

inline std::string rational(const Rational& r) { return to_fraction_string(r); }

inline Json interval(const Interval& x, const std::string& formula = {}) {
  Json out;
  out["lo"] = x.lo;
  out["hi"] = x.hi;
  if (!formula.empty()) out["formula"] = formula;
  return out;
}

inline Json interval(const TaggedInterval& x) { return interval(x.value, x.formula); }

inline Json integer_bound(const IntegerBound& b) { return {{"value", b.value}, {"straddles", b.straddles}}; }

inline Json condition(const ConditionReport& r) {
  Json out;
  out["k"] = r.k;
  out["profile"] = format_profile(r.profile);
  out["c"] = rational(r.c);
  out["tail"] = to_string(r.tail);
  if (r.tail == ConditionReport::Tail::Truncated) {
    out["terms"] = r.terms;
    out["tail_upper"] = rational(r.tail_upper);
  }
  if (r.tail != ConditionReport::Tail::Divergent) {
    out["margin_lo"] = rational(r.margin_lo);
    out["margin_hi"] = rational(r.margin_hi);
  }
  out["status"] = to_string(r.status);
  return out;
}

inline Json ledger(const CountLedger& l) {
  Json out;
  out["k"] = l.k;
  out["m0"] = l.m0 ? Json(*l.m0) : Json(nullptr);
  out["c"] = l.c ? Json(rational(*l.c)) : Json(nullptr);
  out["partial"] = l.partial;
  Json rows = Json::array();
  for (const auto& r : l.rows) {
    Json row;
    row["m"] = r.m;
    row["exact"] = r.exact ? Json(r.exact->str()) : Json(nullptr);
    row["bound"] = r.bound ? Json(r.bound->str()) : Json(nullptr);
    row["c_pow_m"] = r.c_pow_m ? Json(rational(*r.c_pow_m)) : Json(nullptr);
    if (r.step_ok) row["step_ok"] = *r.step_ok;
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

/// CSV with the fixed header m,exact,bound,c_pow_m; missing cells are empty.
inline void ledger_csv(std::ostream& os, const CountLedger& l) {
  os << "m,exact,bound,c_pow_m\n";
  for (const auto& r : l.rows) {
    os << r.m << ',' << (r.exact ? r.exact->str() : "") << ',' << (r.bound ? r.bound->str() : "") << ','
       << (r.c_pow_m ? rational(*r.c_pow_m) : "") << '\n';
  }
}

inline Json feasibility(const FeasibilityReport& f) {
  Json out;
  out["growth_ok"] = f.growth_ok;
  out["growth_failure"] = f.growth_failure ? Json(*f.growth_failure) : Json(nullptr);
  out["ell_bar_s0"] = f.ell_bar_s0;
  out["certified_from"] = f.certified_from;
  out["margin_lo"] = rational(f.margin_lo);
  out["margin_hi"] = rational(f.margin_hi);
  out["sum_status"] = to_string(f.sum_status);
  return out;
}

inline Json theorem_4_3(const Theorem43Report& r) {
  Json out;
  out["delta_bar"] = rational(r.delta_bar);
  out["delta_tilde"] = interval(r.delta_tilde);
  out["r0"] = interval(r.r0);
  out["two_pow_delta_bar"] = {{"lo", rational(r.two_pow_lower)}, {"hi", rational(r.two_pow_upper)},
                              {"formula", "2^(delta_bar (n-1))"}};
  out["c"] = rational(r.c);
  out["eps_bar0"] = interval(r.eps_bar0);
  out["phi_bar"] = format_profile(r.phibar);
  out["s_bar0"] = r.s_bar0.str();
  out["cbar"] = r.cbar;
  out["rough_cbar"] = {{"first", integer_bound(r.rough.first)},
                       {"second", integer_bound(r.rough.second)},
                       {"value", r.rough.value}};
  out["feasibility"] = feasibility(r.feasibility);
  out["s0"] = interval(r.s0);
  out["N"] = interval(r.N);
  out["l1"] = r.l1;
  out["c_l1"] = interval(r.c_l1);
  out["ln_c0"] = interval(r.ln_c0);
  out["c0"] = interval(r.c0);
  out["l0"] = interval(r.l0);
  out["l0_tilde"] = interval(r.l0_tilde);
  return out;
}

}  // namespace aperiodic::io
