#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqineq/exact.hpp"
#include "seqineq/seqgen.hpp"

namespace seqineq {

/// Strict (>) or weak (>=) reading of every inequality in the criterion.
enum class Strictness { strict, weak };

constexpr std::string_view to_string(Strictness s) noexcept {
  return s == Strictness::strict ? "strict" : "weak";
}

/// True when `o` (lhs vs rhs) satisfies lhs > rhs, or lhs >= rhs in weak mode.
constexpr bool accepts(Ordering o, Strictness s) noexcept {
  return o == Ordering::greater || (s == Strictness::weak && o == Ordering::equal);
}

// ---------------------------------------------------------------------------
// Log-concavity

enum class LogConcavity { holds, equality, fails };

constexpr std::string_view to_string(LogConcavity v) noexcept {
  switch (v) {
    case LogConcavity::holds: return "holds";
    case LogConcavity::equality: return "equality";
    default: return "fails";
  }
}

constexpr bool passes(LogConcavity v, Strictness s) noexcept {
  return v == LogConcavity::holds || (s == Strictness::weak && v == LogConcavity::equality);
}

namespace detail {
inline void require_index_range(const SeqTable& t, std::size_t lo, std::size_t hi, const char* what) {
  if (lo > hi || hi > t.max_index())
    throw std::out_of_range(std::string(what) + ": range [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] outside table 0.." +
                            std::to_string(t.max_index()));
}
}  // namespace detail

/// Compares alpha(n)^2 with alpha(n-1) alpha(n+1).
inline LogConcavity log_concave_at(const SeqTable& t, std::size_t n) {
  if (n < 1 || n + 1 > t.max_index())
    throw std::out_of_range("log-concavity at " + std::to_string(n) + " needs 1 <= n <= " +
                            std::to_string(t.max_index()) + " - 1");
  switch (cmp(t[n] * t[n], t[n - 1] * t[n + 1])) {
    case Ordering::greater: return LogConcavity::holds;
    case Ordering::equal: return LogConcavity::equality;
    default: return LogConcavity::fails;
  }
}

struct LogConcavityReport {
  std::size_t lo = 1;
  std::size_t hi = 1;
  Strictness mode = Strictness::weak;
  std::vector<LogConcavity> verdicts;  // verdicts[i] is the verdict at lo + i
  /// Least f in [lo, hi + 1] with every n in [f, hi] passing; hi + 1 when hi itself fails.
  std::size_t frontier = 1;

  LogConcavity at(std::size_t n) const { return verdicts.at(n - lo); }

  std::vector<std::size_t> failures() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      if (!passes(verdicts[i], mode)) out.push_back(lo + i);
    return out;
  }

  std::vector<std::size_t> equalities() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      if (verdicts[i] == LogConcavity::equality) out.push_back(lo + i);
    return out;
  }
};

inline LogConcavityReport scan_log_concavity(const SeqTable& t, std::size_t lo, std::size_t hi,
                                             Strictness mode) {
  if (lo < 1 || lo > hi || hi + 1 > t.max_index())
    throw std::out_of_range("scan range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] needs 1 <= lo <= hi <= " + std::to_string(t.max_index()) + " - 1");
  LogConcavityReport r;
  r.lo = lo;
  r.hi = hi;
  r.mode = mode;
  r.verdicts.reserve(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) r.verdicts.push_back(log_concave_at(t, n));
  r.frontier = hi + 1;
  while (r.frontier > lo && passes(r.verdicts[r.frontier - 1 - lo], mode)) --r.frontier;
  return r;
}

// ---------------------------------------------------------------------------
// The n0 criterion

namespace detail {
inline void require_n0(const SeqTable& t, std::size_t n0) {
  if (n0 < 1 || n0 > t.max_index())
    throw std::out_of_range("n0 = " + std::to_string(n0) + " needs 1 <= n0 <= " +
                            std::to_string(t.max_index()));
}
}  // namespace detail

/// alpha(n0) / alpha(n0 - 1), the slope every root is measured against.
inline ExactRational threshold_ratio(const SeqTable& t, std::size_t n0) {
  detail::require_n0(t, n0);
  return t[n0] / t[n0 - 1];
}

/// alpha(n0)^(1/n0) > alpha(n0)/alpha(n0-1)  (>= in weak mode).
inline bool theorem1_condition(const SeqTable& t, std::size_t n0, Strictness mode) {
  const ExactRational ratio = threshold_ratio(t, n0);
  return accepts(cmp_root_vs_ratio(t[n0], n0, ratio), mode);
}

/// {1 <= a <= n0 - 2 : alpha(a)^(1/a) > alpha(n0)/alpha(n0-1)}, ascending (>= in weak mode).
inline std::vector<std::size_t> compute_A(const SeqTable& t, std::size_t n0, Strictness mode) {
  const ExactRational ratio = threshold_ratio(t, n0);
  std::vector<std::size_t> members;
  for (std::size_t a = 1; a + 2 <= n0; ++a)
    if (accepts(cmp_root_vs_ratio(t[a], a, ratio), mode)) members.push_back(a);
  return members;
}

enum class Coverage { covered, residual, uncovered_column };

constexpr std::string_view to_string(Coverage c) noexcept {
  switch (c) {
    case Coverage::covered: return "covered";
    case Coverage::residual: return "residual";
    default: return "uncovered_column";
  }
}

struct CriterionResult {
  std::size_t n0 = 1;
  Strictness mode = Strictness::strict;
  bool condition_holds = false;
  ExactRational ratio;             // alpha(n0) / alpha(n0 - 1)
  std::vector<std::size_t> A;      // sorted, subset of [1, n0 - 2]
  std::vector<std::size_t> uncovered_columns;  // [1, n0 - 2] minus A

  /// Largest index of the residual rectangle [1, n0-2]^2; 0 when it is empty.
  std::size_t residual_max() const noexcept { return n0 >= 3 ? n0 - 2 : 0; }
  /// Lower edge of the region m, n >= n0 - 1 (with m, n >= 1).
  std::size_t tail_start() const noexcept { return n0 >= 2 ? n0 - 1 : 1; }

  bool in_A(std::size_t a) const { return std::binary_search(A.begin(), A.end(), a); }

  /// Non-empty when A is a contiguous run {first, ..., last}.
  std::optional<std::pair<std::size_t, std::size_t>> A_interval() const {
    if (A.empty() || A.back() - A.front() + 1 != A.size()) return std::nullopt;
    return std::pair{A.front(), A.back()};
  }

  std::vector<std::string> describe_coverage() const {
    const std::string t = std::to_string(tail_start());
    std::vector<std::string> out{"m >= " + t + " and n >= " + t};
    if (!A.empty()) {
      out.push_back("m in A and n >= " + t);
      out.push_back("m >= " + t + " and n in A");
    }
    return out;
  }
};

inline CriterionResult evaluate_criterion(const SeqTable& t, std::size_t n0, Strictness mode) {
  CriterionResult r;
  r.n0 = n0;
  r.mode = mode;
  r.ratio = threshold_ratio(t, n0);
  r.condition_holds = theorem1_condition(t, n0, mode);
  r.A = compute_A(t, n0, mode);
  for (std::size_t a = 1; a + 2 <= n0; ++a)
    if (!r.in_A(a)) r.uncovered_columns.push_back(a);
  return r;
}

/// Where (m, n) falls relative to the criterion's covered region.
inline Coverage coverage_classify(std::size_t m, std::size_t n, const CriterionResult& r) {
  if (m < 1 || n < 1) throw std::out_of_range("coverage is defined for m, n >= 1");
  if (!r.condition_holds)
    throw std::logic_error("coverage_classify requires the n0 condition to hold");
  const std::size_t tail = r.tail_start();
  const bool m_tail = m >= tail;
  const bool n_tail = n >= tail;
  if (m_tail && n_tail) return Coverage::covered;
  if (!m_tail && !n_tail) return Coverage::residual;
  const std::size_t small = m_tail ? n : m;
  return r.in_A(small) ? Coverage::covered : Coverage::uncovered_column;
}

/**
 * Geometric backfill below n0: beta(n) = (alpha(n0-1)/alpha(n0))^(n0-n) alpha(n0)
 * for n < n0, beta(n) = alpha(n) from n0 on. If alpha is log-concave from n0
 * then beta is log-concave everywhere, and beta(0) > 1 is the n0 condition.
 */
inline SeqTable build_beta_extension(const SeqTable& t, std::size_t n0) {
  detail::require_n0(t, n0);
  const ExactRational step = t[n0 - 1] / t[n0];
  std::vector<ExactRational> beta(t.terms().begin(), t.terms().end());
  ExactRational v = t[n0];
  for (std::size_t n = n0; n-- > 0;) {
    v = v * step;
    beta[n] = v;
  }
  SequenceSpec spec{t.name() + "-beta" + std::to_string(n0),
                    DerivedSource{"geometric backfill of " + t.name() + " below n0 = " +
                                  std::to_string(n0)},
                    t.max_index()};
  return SeqTable(std::move(spec), std::move(beta));
}

/// alpha(N+k)^(1/(N+k)) >= alpha(N+k+1)^(1/(N+k+1)).
inline bool br_condition(const SeqTable& t, std::size_t N, std::size_t k) {
  const std::size_t a = N + k;
  if (a < 1) throw std::domain_error("condition needs N + k >= 1");
  if (a + 1 > t.max_index())
    throw std::out_of_range("condition needs alpha(" + std::to_string(a + 1) + ")");
  return accepts(cmp_roots(t[a], a, t[a + 1], a + 1), Strictness::weak);
}

/// alpha(n)^(1/n) >= alpha(n)/alpha(n-1); implied by global log-concavity plus weak BO.
inline bool necessary_condition(const SeqTable& t, std::size_t n) {
  if (n < 1 || n > t.max_index())
    throw std::out_of_range("necessary condition at " + std::to_string(n) + " outside table");
  return accepts(cmp_root_vs_ratio(t[n], n, t[n] / t[n - 1]), Strictness::weak);
}

}  // namespace seqineq
