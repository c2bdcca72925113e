#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqineq/criterion.hpp"
#include "seqineq/verify.hpp"

namespace seqineq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "seqineq";
inline constexpr const char* kToolVersion = "0.1.0";

// Exact values are always strings; only indices and counts are JSON integers.

inline Json pair_list(const std::vector<PairVerdict>& v, bool with_relation) {
  Json out = Json::array();
  for (const auto& p : v) {
    Json e = Json::array({p.m, p.n});
    if (with_relation) e.push_back(std::string(to_string(p.relation)));
    out.push_back(std::move(e));
  }
  return out;
}

inline Json to_json(const LogConcavityReport& r, std::size_t n0) {
  return Json{{"range", {r.lo, r.hi}},
              {"mode", std::string(to_string(r.mode))},
              {"frontier", r.frontier},
              {"requested_n0", n0},
              {"frontier_within_n0", r.frontier <= n0},
              {"certified_through", r.hi},
              {"failures", r.failures()},
              {"equalities", r.equalities()}};
}

inline Json to_json(const CriterionResult& c, bool br_holds) {
  Json interval = nullptr;
  if (auto iv = c.A_interval()) interval = Json{{"first", iv->first}, {"last", iv->second}};
  Json residual = nullptr;
  if (c.residual_max() >= 1) residual = {1, c.residual_max()};
  return Json{{"n0", c.n0},
              {"mode", std::string(to_string(c.mode))},
              {"ratio", c.ratio.str()},
              {"condition_holds", c.condition_holds},
              {"br_condition", {{"N", c.n0}, {"k", 0}, {"holds", br_holds}}},
              {"A", c.A},
              {"A_interval", interval},
              {"uncovered_columns", c.uncovered_columns},
              {"covered_regions", c.describe_coverage()},
              {"residual_rectangle", residual}};
}

inline Json to_json(const BOReport& r) {
  return Json{{"region", r.region},
              {"mode", std::string(to_string(r.mode))},
              {"pairs", r.pairs},
              {"greater", r.greater},
              {"less_count", r.less.size()},
              {"equal_count", r.equal.size()},
              {"clean", r.clean()},
              {"violations", pair_list(BOReport::canonical(r.violations()), true)},
              {"equalities", pair_list(BOReport::canonical(r.equal), false)}};
}

inline Json to_json(const AkkReport& r) {
  Json j{{"mode", std::string(to_string(r.mode))},
         {"n_max", r.n_max},
         {"alpha0_vs_one", std::string(to_string(r.alpha0_vs_one))},
         {"shape_holds", r.shape_holds},
         {"shape_failures", r.shape_failures},
         {"hypothesis_holds", r.hypothesis_holds},
         {"conclusion_holds", r.conclusion_holds},
         {"conclusion_failures", pair_list(r.conclusion_failures, true)}};
  if (r.sharp_holds) {
    j["sharp_holds"] = *r.sharp_holds;
    j["sharp_failures"] = pair_list(r.sharp_failures, false);
  }
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json columns = Json::array();
  for (const auto& c : r.uncovered)
    columns.push_back(Json{{"a", c.a},
                           {"checked", {c.from, c.to}},
                           {"note", "no theorem coverage; checked up to horizon"},
                           {"greater", c.greater},
                           {"equal", pair_list(c.equal, false)},
                           {"less", pair_list(c.less, false)}});

  Json coverage{{"applies", r.criterion.condition_holds},
                {"covered_pairs_checked", r.covered_pairs_checked},
                {"counterexamples", pair_list(r.covered_counterexamples, true)},
                {"consistent", r.consistent()}};

  Json beta{{"beta0", r.beta.beta0.str()},
            {"beta0_gt_one", r.beta.beta0_gt_one},
            {"logconcave_failures", r.beta.logconcave_failures},
            {"akk", to_json(r.beta.akk)}};

  return Json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"config",
               {{"sequence", r.sequence},
                {"n0", r.n0},
                {"mode", std::string(to_string(r.mode))},
                {"horizon", r.horizon}}},
              {"log_concavity", to_json(r.log_concavity, r.n0)},
              {"criterion", to_json(r.criterion, r.br_condition_at_n0)},
              {"residual", r.residual ? to_json(*r.residual) : Json(nullptr)},
              {"uncovered_columns", std::move(columns)},
              {"horizon_sweep", to_json(r.horizon_sweep)},
              {"coverage_check", std::move(coverage)},
              {"beta_extension", std::move(beta)},
              {"necessary_condition",
               {{"range", {1, r.horizon}}, {"failures", r.necessary_condition_failures}}},
              {"exceptions", pair_list(BOReport::canonical(r.horizon_sweep.violations()), true)}};
}

// ---------------------------------------------------------------------------
// Human-readable lines

inline std::string index_list(const std::vector<std::size_t>& v) {
  if (v.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string set_summary(const CriterionResult& c) {
  if (c.A.empty()) return "{}";
  if (auto iv = c.A_interval())
    return "{" + std::to_string(iv->first) + ".." + std::to_string(iv->second) + "}";
  return "{" + index_list(c.A) + "}";
}

inline std::string pairs_summary(const std::vector<PairVerdict>& v) {
  if (v.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += "(" + std::to_string(v[i].m) + "," + std::to_string(v[i].n) + ")" +
           std::string(to_string(v[i].relation));
  }
  return out;
}

inline std::vector<std::string> summary_lines(const VerificationReport& r) {
  std::vector<std::string> s;
  s.push_back("sequence " + r.sequence + ", n0 = " + std::to_string(r.n0) + ", " +
              std::string(to_string(r.mode)) + ", horizon " + std::to_string(r.horizon));
  s.push_back("log-concavity on [1," + std::to_string(r.log_concavity.hi) + "]: frontier " +
              std::to_string(r.log_concavity.frontier) + " (certified within horizon), failures " +
              index_list(r.log_concavity.failures()));
  s.push_back(std::string("n0 condition with ratio ") + r.criterion.ratio.str() + ": " +
              (r.criterion.condition_holds ? "holds" : "fails"));
  s.push_back("A = " + set_summary(r.criterion) + ", uncovered columns " +
              index_list(r.criterion.uncovered_columns));
  if (r.residual)
    s.push_back("residual " + r.residual->region + ": " +
                pairs_summary(BOReport::canonical(r.residual->violations())));
  for (const auto& c : r.uncovered)
    s.push_back("column a = " + std::to_string(c.a) + ": no theorem coverage; checked n in [" +
                std::to_string(c.from) + "," + std::to_string(c.to) + "]: " +
                std::to_string(c.less.size()) + " LT, " + std::to_string(c.equal.size()) +
                " EQ, " + std::to_string(c.greater) + " GT");
  s.push_back("exceptions within horizon: " +
              pairs_summary(BOReport::canonical(r.horizon_sweep.violations())));
  if (r.criterion.condition_holds)
    s.push_back("coverage check: " + std::to_string(r.covered_pairs_checked) +
                " covered pairs, " + std::to_string(r.covered_counterexamples.size()) +
                " counterexamples");
  s.push_back("beta(0) = " + r.beta.beta0.str() + (r.beta.beta0_gt_one ? " > 1" : " <= 1"));
  s.push_back("necessary condition failures: " + index_list(r.necessary_condition_failures));
  return s;
}

// ---------------------------------------------------------------------------
// Expected-exceptions files: "m n REL" per line with m <= n, '#' comments.

inline std::vector<PairVerdict> parse_exceptions(std::istream& in) {
  std::vector<PairVerdict> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string rel;
    long long m = 0, n = 0;
    if (!(fields >> m)) continue;
    if (!(fields >> n >> rel) || m < 0 || n < 0)
      throw std::invalid_argument("exceptions line " + std::to_string(line_no) +
                                  ": expected 'm n LT|EQ'");
    PairVerdict p{static_cast<std::size_t>(std::min(m, n)), static_cast<std::size_t>(std::max(m, n)),
                  parse_ordering(rel)};
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string format_exceptions(const std::vector<PairVerdict>& v) {
  std::string out;
  for (const auto& p : v)
    out += std::to_string(p.m) + " " + std::to_string(p.n) + " " +
           std::string(to_string(p.relation)) + "\n";
  return out;
}

}  // namespace seqineq
