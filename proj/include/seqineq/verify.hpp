#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "seqineq/criterion.hpp"
#include "seqineq/exact.hpp"
#include "seqineq/seqgen.hpp"

namespace seqineq {

/// alpha(m) alpha(n) compared with alpha(m + n).
struct PairVerdict {
  std::size_t m = 0;
  std::size_t n = 0;
  Ordering relation = Ordering::equal;

  friend bool operator==(const PairVerdict&, const PairVerdict&) = default;
  friend auto operator<=>(const PairVerdict& a, const PairVerdict& b) {
    if (auto c = a.m <=> b.m; c != 0) return c;
    return a.n <=> b.n;
  }
};

inline PairVerdict bo_pair(const SeqTable& t, std::size_t m, std::size_t n) {
  if (m + n > t.max_index())
    throw std::out_of_range("pair (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") needs alpha(" + std::to_string(m + n) + "), table ends at " +
                            std::to_string(t.max_index()));
  // Evaluate with the smaller index first so the product is formed identically
  // for (m, n) and (n, m).
  const auto& lo = t[std::min(m, n)];
  const auto& hi = t[std::max(m, n)];
  return {m, n, cmp(lo * hi, t[m + n])};
}

/**
 * Outcome of an exhaustive sweep. Pairs are listed in (m, n) order; strict
 * and weak readings are applied only when violations() is asked for.
 */
struct BOReport {
  std::string region;
  Strictness mode = Strictness::strict;
  std::size_t pairs = 0;
  std::size_t greater = 0;
  std::vector<PairVerdict> less;
  std::vector<PairVerdict> equal;

  std::vector<PairVerdict> violations() const {
    std::vector<PairVerdict> out = less;
    if (mode == Strictness::strict) {
      out.insert(out.end(), equal.begin(), equal.end());
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  bool clean() const { return less.empty() && (mode == Strictness::weak || equal.empty()); }

  /// Keeps only m <= n; the relation is symmetric in (m, n).
  static std::vector<PairVerdict> canonical(const std::vector<PairVerdict>& v) {
    std::vector<PairVerdict> out;
    std::copy_if(v.begin(), v.end(), std::back_inserter(out),
                 [](const PairVerdict& p) { return p.m <= p.n; });
    return out;
  }
};

namespace detail {

struct RowResult {
  std::size_t pairs = 0;
  std::size_t greater = 0;
  std::vector<PairVerdict> less, equal;
};

/// Evaluates rows[i] -> [first_n(m), last_n(m)] on `jobs` workers; merges in row order.
template <typename FirstN, typename LastN>
void sweep_rows(const SeqTable& t, const std::vector<std::size_t>& rows, FirstN first_n,
                LastN last_n, unsigned jobs, BOReport& report) {
  std::vector<RowResult> results(rows.size());
  auto work_row = [&](std::size_t i) {
    const std::size_t m = rows[i];
    RowResult& r = results[i];
    const std::size_t lo = first_n(m), hi = last_n(m);
    for (std::size_t n = lo; n <= hi && lo <= hi; ++n) {
      const PairVerdict v = bo_pair(t, m, n);
      ++r.pairs;
      switch (v.relation) {
        case Ordering::greater: ++r.greater; break;
        case Ordering::equal: r.equal.push_back(v); break;
        case Ordering::less: r.less.push_back(v); break;
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) work_row(i);
      });
  }

  for (auto& r : results) {
    report.pairs += r.pairs;
    report.greater += r.greater;
    report.less.insert(report.less.end(), r.less.begin(), r.less.end());
    report.equal.insert(report.equal.end(), r.equal.begin(), r.equal.end());
  }
}

}  // namespace detail

/// Every pair in [m_lo, m_hi] x [n_lo, n_hi].
inline BOReport bo_rectangle(const SeqTable& t, std::size_t m_lo, std::size_t m_hi,
                             std::size_t n_lo, std::size_t n_hi, Strictness mode,
                             unsigned jobs = 1) {
  if (m_lo > m_hi || n_lo > n_hi) throw std::invalid_argument("empty rectangle bounds");
  if (m_hi + n_hi > t.max_index())
    throw std::out_of_range("rectangle needs alpha(" + std::to_string(m_hi + n_hi) +
                            "), table ends at " + std::to_string(t.max_index()));
  BOReport report;
  report.mode = mode;
  report.region = "[" + std::to_string(m_lo) + "," + std::to_string(m_hi) + "]x[" +
                  std::to_string(n_lo) + "," + std::to_string(n_hi) + "]";
  std::vector<std::size_t> rows;
  for (std::size_t m = m_lo; m <= m_hi; ++m) rows.push_back(m);
  detail::sweep_rows(
      t, rows, [&](std::size_t) { return n_lo; }, [&](std::size_t) { return n_hi; }, jobs, report);
  return report;
}

/// Pairs lo <= m <= n with m + n <= total_max.
inline BOReport bo_triangle(const SeqTable& t, std::size_t lo, std::size_t total_max,
                            Strictness mode, unsigned jobs = 1) {
  if (total_max > t.max_index())
    throw std::out_of_range("sweep needs alpha(" + std::to_string(total_max) +
                            "), table ends at " + std::to_string(t.max_index()));
  BOReport report;
  report.mode = mode;
  report.region = std::to_string(lo) + "<=m<=n, m+n<=" + std::to_string(total_max);
  std::vector<std::size_t> rows;
  for (std::size_t m = lo; 2 * m <= total_max; ++m) rows.push_back(m);
  detail::sweep_rows(
      t, rows, [](std::size_t m) { return m; }, [&](std::size_t m) { return total_max - m; },
      jobs, report);
  return report;
}

// ---------------------------------------------------------------------------
// Log-convex / log-concave implications

enum class AkkMode {
  /// log-convex with alpha(0) <= 1  =>  alpha(n) alpha(m) <= alpha(0) alpha(n+m)
  logconvex_normalized,
  /// log-concave with alpha(0) > 1  =>  alpha(n) alpha(m) > alpha(n+m)
  logconcave_gt1,
};

constexpr std::string_view to_string(AkkMode m) noexcept {
  return m == AkkMode::logconvex_normalized ? "logconvex_normalized" : "logconcave_gt1";
}

struct AkkReport {
  AkkMode mode = AkkMode::logconvex_normalized;
  std::size_t n_max = 0;
  Ordering alpha0_vs_one = Ordering::equal;
  bool shape_holds = false;                 // log-convex / log-concave on 1..n_max-1
  std::vector<std::size_t> shape_failures;
  bool hypothesis_holds = false;            // shape plus the alpha(0) requirement
  bool conclusion_holds = false;
  std::vector<PairVerdict> conclusion_failures;  // 0 <= m <= n, m + n <= n_max
  std::optional<bool> sharp_holds;               // logconvex mode only
  std::vector<PairVerdict> sharp_failures;
};

/**
 * Checks hypothesis and conclusion of the log-convexity / log-concavity
 * implications separately on every index and pair up to n_max.
 *
 * logconvex_normalized: conclusion is alpha(n)alpha(m) <= alpha(n+m) when
 * alpha(0) = 1 and strict < when alpha(0) < 1; the sharper
 * alpha(n)alpha(m) <= alpha(0)alpha(n+m) (m >= 1) is reported as well.
 * logconcave_gt1: conclusion is alpha(n)alpha(m) > alpha(n+m) for all n, m >= 0.
 */
inline AkkReport akk_check(const SeqTable& t, std::size_t n_max, AkkMode mode) {
  if (n_max < 1 || n_max > t.max_index())
    throw std::out_of_range("akk_check needs 1 <= n_max <= " + std::to_string(t.max_index()));
  AkkReport r;
  r.mode = mode;
  r.n_max = n_max;
  r.alpha0_vs_one = cmp(t[0], ExactRational(1));

  for (std::size_t n = 1; n + 1 <= n_max; ++n) {
    const LogConcavity v = log_concave_at(t, n);
    const bool ok = mode == AkkMode::logconcave_gt1 ? v != LogConcavity::fails
                                                    : v != LogConcavity::holds;
    if (!ok) r.shape_failures.push_back(n);
  }
  r.shape_holds = r.shape_failures.empty();
  const bool alpha0_ok = mode == AkkMode::logconcave_gt1 ? r.alpha0_vs_one == Ordering::greater
                                                         : r.alpha0_vs_one != Ordering::greater;
  r.hypothesis_holds = r.shape_holds && alpha0_ok;

  const bool strict_below = mode == AkkMode::logconvex_normalized && r.alpha0_vs_one == Ordering::less;
  for (std::size_t m = 0; 2 * m <= n_max; ++m) {
    for (std::size_t n = m; m + n <= n_max; ++n) {
      const PairVerdict v = bo_pair(t, m, n);
      bool ok = false;
      if (mode == AkkMode::logconcave_gt1)
        ok = v.relation == Ordering::greater;
      else
        ok = strict_below ? v.relation == Ordering::less : v.relation != Ordering::greater;
      if (!ok) r.conclusion_failures.push_back(v);

      if (mode == AkkMode::logconvex_normalized && n >= 1) {
        if (cmp(t[m] * t[n], t[0] * t[m + n]) == Ordering::greater)
          r.sharp_failures.push_back({m, n, Ordering::greater});
      }
    }
  }
  r.conclusion_holds = r.conclusion_failures.empty();
  if (mode == AkkMode::logconvex_normalized) r.sharp_holds = r.sharp_failures.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Full verification run

struct ColumnSample {
  std::size_t a = 0;
  std::size_t from = 0;  // partner indices checked: [from, to]
  std::size_t to = 0;
  std::size_t greater = 0;
  std::vector<PairVerdict> equal;
  std::vector<PairVerdict> less;
};

struct BetaDiagnostics {
  ExactRational beta0;
  bool beta0_gt_one = false;
  std::vector<std::size_t> logconcave_failures;  // weak, on 1..horizon-1
  AkkReport akk;
};

struct VerificationReport {
  std::string sequence;
  std::size_t n0 = 1;
  Strictness mode = Strictness::strict;
  std::size_t horizon = 0;

  LogConcavityReport log_concavity;  // on [1, horizon - 1]
  bool frontier_within_n0 = false;
  CriterionResult criterion;
  bool br_condition_at_n0 = false;   // N = n0, k = 0
  std::optional<BOReport> residual;  // [1, n0-2]^2 when non-empty
  std::vector<ColumnSample> uncovered;
  BOReport horizon_sweep;            // 1 <= m <= n, m + n <= horizon
  std::size_t covered_pairs_checked = 0;
  std::vector<PairVerdict> covered_counterexamples;
  BetaDiagnostics beta;
  std::vector<std::size_t> necessary_condition_failures;  // over 1..horizon

  /// No pair classified covered contradicts the inequality within the horizon.
  bool consistent() const { return covered_counterexamples.empty(); }
};

inline VerificationReport full_report(const SeqTable& table, std::size_t n0, Strictness mode,
                                      std::size_t horizon, unsigned jobs = 1) {
  if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
  if (horizon < 2 * (n0 - 1) || horizon < 2)
    throw std::invalid_argument("horizon " + std::to_string(horizon) + " must be >= 2(n0 - 1) = " +
                                std::to_string(2 * (n0 - 1)) + " and >= 2");
  if (horizon <= n0)
    throw std::invalid_argument("horizon must exceed n0 so alpha(n0 + 1) is available");
  const SeqTable t = table.prefix(horizon);

  VerificationReport r;
  r.sequence = t.name();
  r.n0 = n0;
  r.mode = mode;
  r.horizon = horizon;

  r.log_concavity = scan_log_concavity(t, 1, horizon - 1, mode);
  r.frontier_within_n0 = r.log_concavity.frontier <= n0;
  r.criterion = evaluate_criterion(t, n0, mode);
  r.br_condition_at_n0 = br_condition(t, n0, 0);

  if (const std::size_t hi = r.criterion.residual_max(); hi >= 1)
    r.residual = bo_rectangle(t, 1, hi, 1, hi, mode, jobs);

  const std::size_t tail = r.criterion.tail_start();
  for (std::size_t a : r.criterion.uncovered_columns) {
    ColumnSample s;
    s.a = a;
    s.from = tail;
    s.to = horizon - a;
    for (std::size_t n = s.from; n <= s.to; ++n) {
      const PairVerdict v = bo_pair(t, a, n);
      if (v.relation == Ordering::greater) ++s.greater;
      else if (v.relation == Ordering::equal) s.equal.push_back(v);
      else s.less.push_back(v);
    }
    r.uncovered.push_back(std::move(s));
  }

  r.horizon_sweep = bo_triangle(t, 1, horizon, mode, jobs);

  if (r.criterion.condition_holds) {
    for (std::size_t m = 1; 2 * m <= horizon; ++m)
      for (std::size_t n = m; m + n <= horizon; ++n)
        if (coverage_classify(m, n, r.criterion) == Coverage::covered) ++r.covered_pairs_checked;
    // The sweep already lists every failing pair; only those need classifying.
    for (const auto& v : r.horizon_sweep.violations())
      if (coverage_classify(v.m, v.n, r.criterion) == Coverage::covered)
        r.covered_counterexamples.push_back(v);
  }

  const SeqTable beta = build_beta_extension(t, n0);
  r.beta.beta0 = beta[0];
  r.beta.beta0_gt_one = cmp(beta[0], ExactRational(1)) == Ordering::greater;
  for (std::size_t n = 1; n + 1 <= horizon; ++n)
    if (log_concave_at(beta, n) == LogConcavity::fails) r.beta.logconcave_failures.push_back(n);
  r.beta.akk = akk_check(beta, horizon, AkkMode::logconcave_gt1);

  for (std::size_t n = 1; n <= horizon; ++n)
    if (!necessary_condition(t, n)) r.necessary_condition_failures.push_back(n);
  return r;
}

inline VerificationReport full_report(const SequenceSpec& spec, std::size_t n0, Strictness mode,
                                      std::size_t horizon, unsigned jobs = 1) {
  SequenceSpec s = spec;
  s.length = horizon;
  return full_report(generate(s), n0, mode, horizon, jobs);
}

}  // namespace seqineq
