#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "seqineq/criterion.hpp"
#include "seqineq/report.hpp"
#include "seqineq/seqgen.hpp"
#include "seqineq/verify.hpp"

namespace seqineq::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int mismatch = 2;
inline constexpr int usage = 64;
inline constexpr int io = 74;
inline constexpr int internal = 70;
}  // namespace exit_code

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string selector;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n0;
  Strictness mode = Strictness::strict;
  std::optional<std::size_t> horizon;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> expect;
  std::optional<std::size_t> lo;  // residual rectangle override
  std::optional<std::size_t> hi;
  unsigned jobs = 1;
  bool timing = true;
};

/// n0 values known from the literature for the builtin sequences.
inline std::optional<std::size_t> default_n0(std::string_view selector) {
  if (selector == "partition") return 26;
  if (selector == "plane") return 12;
  if (selector == "overpartition") return 4;
  if (selector == "regular:2") return 33;
  if (selector == "regular:3") return 58;
  return std::nullopt;
}

inline std::optional<std::size_t> default_horizon(std::string_view selector) {
  if (selector == "partition" || selector == "overpartition") return 200;
  if (selector == "plane" || selector.starts_with("regular:")) return 150;
  return std::nullopt;
}

namespace detail {

inline SequenceSpec spec_for(const RunConfig& c, std::size_t N) {
  try {
    return parse_selector(c.selector, N);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline SeqTable make_table(const RunConfig& c, std::size_t N) {
  const SequenceSpec spec = spec_for(c, N);
  if (c.cache_dir) return TableCache(*c.cache_dir).get_or_generate(spec);
  return generate(spec);
}

inline std::size_t resolve_horizon(const RunConfig& c) {
  if (c.horizon) return *c.horizon;
  if (auto h = default_horizon(c.selector)) return *h;
  const SequenceSpec spec = spec_for(c, 0);
  if (const auto* file = std::get_if<ExplicitTermsSource>(&spec.source))
    return load_terms(file->path).max_index();
  throw UsageError("--horizon is required for " + c.selector);
}

inline std::size_t resolve_n0(const RunConfig& c) {
  if (c.n0) return *c.n0;
  if (auto d = default_n0(c.selector)) return *d;
  throw UsageError("--n0 is required for " + c.selector);
}

inline void require_horizon(std::size_t horizon, std::size_t n0) {
  if (n0 < 1) throw UsageError("--n0 must be >= 1");
  if (horizon < 2 * (n0 - 1) || horizon <= n0)
    throw UsageError("horizon " + std::to_string(horizon) + " must be >= 2(n0 - 1) and > n0");
}

inline Json config_json(const RunConfig& c, std::size_t horizon, std::optional<std::size_t> n0) {
  Json j{{"sequence", c.selector}, {"mode", std::string(to_string(c.mode))}, {"horizon", horizon}};
  j["n0"] = n0 ? Json(*n0) : Json(nullptr);
  return j;
}

inline Json tool_json() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

class Stopwatch {
 public:
  Json json(const RunConfig& c) const {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    return Json{{"elapsed_ms", std::to_string(ms)}, {"jobs", c.jobs}};
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.out) {
    out << text;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::filesystem::filesystem_error("cannot write output", *c.out,
                                                  std::make_error_code(std::errc::io_error));
  f << text;
  if (!f) throw std::filesystem::filesystem_error("write failed", *c.out,
                                                  std::make_error_code(std::errc::io_error));
}

inline void emit_document(const RunConfig& c, Json doc, const Stopwatch& clock, std::ostream& out) {
  if (c.timing) doc["timing"] = clock.json(c);
  if (c.out)
    for (const auto& line : doc["summary"]) out << line.get<std::string>() << "\n";
  emit(c, doc.dump(2) + "\n", out);
}

}  // namespace detail

/// Writes the terms file for --seq/--n.
inline int cmd_gen(const RunConfig& c, std::ostream& out) {
  if (!c.n) throw UsageError("gen needs --n");
  const SeqTable t = detail::make_table(c, *c.n);
  detail::emit(c, format_terms(t), out);
  return exit_code::ok;
}

inline int cmd_frontier(const RunConfig& c, std::ostream& out) {
  detail::Stopwatch clock;
  const std::size_t horizon = detail::resolve_horizon(c);
  if (horizon < 2) throw UsageError("horizon must be >= 2");
  std::optional<std::size_t> n0 = c.n0 ? c.n0 : default_n0(c.selector);
  const SeqTable t = detail::make_table(c, horizon);
  const LogConcavityReport r = scan_log_concavity(t, 1, horizon - 1, c.mode);
  const bool ok = !n0 || r.frontier <= *n0;

  Json doc;
  doc["summary"] = Json::array(
      {"log-concavity (" + std::string(to_string(c.mode)) + ") of " + t.name() + " on [1," +
           std::to_string(r.hi) + "]: frontier " + std::to_string(r.frontier),
       "failures: " + index_list(r.failures()),
       n0 ? std::string(ok ? "frontier within n0 = " : "frontier exceeds n0 = ") + std::to_string(*n0)
          : std::string("no n0 requested")});
  doc["tool"] = detail::tool_json();
  doc["config"] = detail::config_json(c, horizon, n0);
  doc["log_concavity"] = to_json(r, n0.value_or(r.frontier));
  detail::emit_document(c, std::move(doc), clock, out);
  return ok ? exit_code::ok : exit_code::mismatch;
}

inline int cmd_criterion(const RunConfig& c, std::ostream& out) {
  detail::Stopwatch clock;
  const std::size_t n0 = detail::resolve_n0(c);
  const std::size_t horizon = detail::resolve_horizon(c);
  if (n0 < 1 || n0 + 1 > horizon) throw UsageError("criterion needs 1 <= n0 < horizon");
  const SeqTable t = detail::make_table(c, horizon);
  const CriterionResult r = evaluate_criterion(t, n0, c.mode);
  const bool br = br_condition(t, n0, 0);

  Json doc;
  doc["summary"] = Json::array(
      {"n0 condition for " + t.name() + " at n0 = " + std::to_string(n0) + " with ratio " +
           r.ratio.str() + ": " + (r.condition_holds ? "holds" : "fails"),
       "A = " + set_summary(r),
       std::string("single-index root condition at N = n0, k = 0: ") + (br ? "holds" : "fails")});
  doc["tool"] = detail::tool_json();
  doc["config"] = detail::config_json(c, horizon, n0);
  doc["criterion"] = to_json(r, br);
  detail::emit_document(c, std::move(doc), clock, out);
  return exit_code::ok;
}

/// Sweeps the residual rectangle; with --expect, exits 0 iff the violations match.
inline int cmd_residual(const RunConfig& c, std::ostream& out) {
  detail::Stopwatch clock;
  const std::size_t n0 = detail::resolve_n0(c);
  const std::size_t horizon = detail::resolve_horizon(c);
  detail::require_horizon(horizon, n0);
  const std::size_t lo = c.lo.value_or(1);
  const std::size_t hi = c.hi.value_or(n0 >= 3 ? n0 - 2 : 0);
  if (lo < 1 || hi < lo) throw UsageError("empty residual rectangle");
  if (2 * hi > horizon) throw UsageError("rectangle exceeds horizon");
  const SeqTable t = detail::make_table(c, horizon);
  const BOReport r = bo_rectangle(t, lo, hi, lo, hi, c.mode, c.jobs);
  const auto found = BOReport::canonical(r.violations());

  Json doc;
  doc["summary"] = Json::array({"residual " + r.region + " of " + t.name() + " (" +
                                std::string(to_string(c.mode)) + "): " + pairs_summary(found)});
  doc["tool"] = detail::tool_json();
  doc["config"] = detail::config_json(c, horizon, n0);
  doc["residual"] = to_json(r);

  int code = exit_code::ok;
  if (c.expect) {
    std::ifstream in(*c.expect);
    if (!in) throw std::filesystem::filesystem_error("cannot open expectations", *c.expect,
                                                     std::make_error_code(std::errc::no_such_file_or_directory));
    const auto expected = parse_exceptions(in);
    std::vector<PairVerdict> missing, unexpected;
    std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(),
                        std::back_inserter(missing), [](const auto& a, const auto& b) {
                          return std::tie(a.m, a.n, a.relation) < std::tie(b.m, b.n, b.relation);
                        });
    std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(),
                        std::back_inserter(unexpected), [](const auto& a, const auto& b) {
                          return std::tie(a.m, a.n, a.relation) < std::tie(b.m, b.n, b.relation);
                        });
    const bool match = missing.empty() && unexpected.empty();
    doc["expected"] = Json{{"file", c.expect->filename().string()},
                           {"match", match},
                           {"missing", pair_list(missing, true)},
                           {"unexpected", pair_list(unexpected, true)}};
    doc["summary"].push_back(match ? "matches expected exceptions"
                                   : "MISMATCH: missing " + pairs_summary(missing) +
                                         "; unexpected " + pairs_summary(unexpected));
    if (!match) code = exit_code::mismatch;
  }
  detail::emit_document(c, std::move(doc), clock, out);
  return code;
}

inline int cmd_report(const RunConfig& c, std::ostream& out) {
  detail::Stopwatch clock;
  const std::size_t n0 = detail::resolve_n0(c);
  const std::size_t horizon = detail::resolve_horizon(c);
  detail::require_horizon(horizon, n0);
  const SeqTable t = detail::make_table(c, horizon);
  const VerificationReport r = full_report(t, n0, c.mode, horizon, c.jobs);

  Json doc;
  doc["summary"] = summary_lines(r);
  doc["report"] = to_json(r);
  detail::emit_document(c, std::move(doc), clock, out);
  return r.consistent() ? exit_code::ok : exit_code::mismatch;
}

/// Parses argv-style arguments (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact log-concavity and Bessenrodt-Ono inequality verification", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig c;
  bool weak = false;
  bool strict = false;
  bool no_timing = false;
  std::string out_path, cache_dir, expect;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seq", c.selector, "partition | plane | overpartition | regular:k | file:PATH")
        ->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--cache-dir", cache_dir, "directory for cached term tables");
  };
  auto add_analysis = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--n0", c.n0, "index from which log-concavity is assumed");
    sub->add_option("--horizon", c.horizon, "largest index examined");
    auto* s = sub->add_flag("--strict", strict, "strict inequalities (default)");
    auto* w = sub->add_flag("--weak", weak, "weak inequalities");
    s->excludes(w);
    sub->add_option("--jobs", c.jobs, "worker threads for pair sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", no_timing, "omit the timing section");
  };

  auto* gen = app.add_subcommand("gen", "write a terms file");
  add_common(gen);
  gen->add_option("--n", c.n, "largest index")->required();

  auto* frontier = app.add_subcommand("frontier", "scan log-concavity up to the horizon");
  add_analysis(frontier);
  auto* criterion = app.add_subcommand("criterion", "evaluate the n0 condition and the set A");
  add_analysis(criterion);
  auto* residual = app.add_subcommand("residual", "sweep the residual rectangle");
  add_analysis(residual);
  residual->add_option("--expect", expect, "expected-exceptions file");
  residual->add_option("--lo", c.lo, "rectangle lower edge (default 1)");
  residual->add_option("--hi", c.hi, "rectangle upper edge (default n0 - 2)");
  auto* report = app.add_subcommand("report", "full verification report");
  add_analysis(report);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  if (weak) c.mode = Strictness::weak;
  c.timing = !no_timing;
  if (!out_path.empty()) c.out = out_path;
  if (!cache_dir.empty()) c.cache_dir = cache_dir;
  if (!expect.empty()) c.expect = expect;

  try {
    if (gen->parsed()) return cmd_gen(c, out);
    if (frontier->parsed()) return cmd_frontier(c, out);
    if (criterion->parsed()) return cmd_criterion(c, out);
    if (residual->parsed()) return cmd_residual(c, out);
    return cmd_report(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const TermsError& e) {
    err << "terms file: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace seqineq::cli
