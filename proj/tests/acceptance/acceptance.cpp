// Acceptance gate. One line per criterion: "AC<k> PASS|FAIL <name> (<ms> ms, limit <s> s)",
// followed by indented detail lines. Exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqineq/cli.hpp"
#include "support/oracles.hpp"
#include "support/tables.hpp"

using namespace seqineq;
using testing_support::builtin;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("note " + what); }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 means no time limit
  std::function<void(Outcome&)> body;
};

std::string pairs(const std::vector<PairVerdict>& v) { return pairs_summary(v); }

ExactRational q(long p, long d) { return ExactRational(BigInt(p), BigInt(d)); }

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// ---------------------------------------------------------------------------

void ac1_generators(Outcome& o) {
  constexpr int N = 40;
  const auto p = builtin("partition", N);
  const auto r2 = builtin("regular:2", N);
  const auto r3 = builtin("regular:3", N);
  const auto op = builtin("overpartition", N);
  const auto pp = builtin("plane", N);
  oracle::PlanePartitionCounter plane;
  int bad_p = 0, bad_r2 = 0, bad_r3 = 0, bad_op = 0, bad_pp = 0;
  for (int n = 0; n <= N; ++n) {
    auto same = [&](const SeqTable& t, std::uint64_t v) {
      return t[n] == ExactRational(BigInt(std::to_string(v)));
    };
    bad_p += !same(p, oracle::partitions(n));
    bad_r2 += !same(r2, oracle::regular_partitions(n, 2));
    bad_r3 += !same(r3, oracle::regular_partitions(n, 3));
    bad_op += !same(op, oracle::overpartitions(n));
    bad_pp += !same(pp, plane.count(n));
  }
  o.check(bad_p == 0, "partition == enumeration, n <= 40 (p(40) = " + p[40].str() + ")");
  o.check(bad_r2 == 0, "regular:2 == enumeration of parts not divisible by 2");
  o.check(bad_r3 == 0, "regular:3 == enumeration of parts not divisible by 3");
  o.check(bad_op == 0, "overpartition == overline-marked enumeration (p-bar(40) = " + op[40].str() + ")");
  o.check(bad_pp == 0, "plane == plane-partition enumeration (pp(40) = " + pp[40].str() + ")");
}

void ac2_ratios(Outcome& o) {
  const auto pp = builtin("plane", 12);
  const auto op = builtin("overpartition", 4);
  const auto r2 = builtin("regular:2", 33);
  const auto r3 = builtin("regular:3", 58);
  auto ratio = [&](const SeqTable& t, std::size_t n, const ExactRational& want, const char* what) {
    const ExactRational got = t[n] / t[n - 1];
    o.check(got == want, std::string(what) + " = " + got.str() + " (expected " + want.str() + ")");
  };
  ratio(pp, 12, q(1479, 859), "pp(12)/pp(11)");
  ratio(op, 4, q(7, 4), "p-bar(4)/p-bar(3)");
  ratio(r2, 33, q(224, 195), "p2(33)/p2(32)");
  ratio(r3, 58, q(525, 463), "p3(58)/p3(57)");
}

void ac3_frontier(Outcome& o) {
  const auto r = scan_log_concavity(builtin("partition", 201), 1, 200, Strictness::weak);
  std::vector<std::size_t> odd;
  for (std::size_t n = 1; n <= 25; n += 2) odd.push_back(n);
  o.check(r.failures() == odd, "weak failures on [1,200]: " + index_list(r.failures()));
  o.check(r.frontier == 26, "frontier " + std::to_string(r.frontier));
}

void ac4_partition_pipeline(Outcome& o) {
  const auto t = builtin("partition", 200);
  const auto c = evaluate_criterion(t, 26, Strictness::strict);
  o.check(c.condition_holds, "n0 condition at 26, ratio " + c.ratio.str());
  o.check(c.A == range(2, 24), "A = " + set_summary(c));
  o.check(c.uncovered_columns == std::vector<std::size_t>{1}, "uncovered columns " + index_list(c.uncovered_columns));

  const auto r = bo_rectangle(t, 1, 24, 1, 24, Strictness::strict, 4);
  const auto found = BOReport::canonical(r.violations());
  std::vector<PairVerdict> lt, eq, col1;
  for (const auto& v : found) {
    if (v.m == 1) col1.push_back(v);
    else if (v.relation == Ordering::less) lt.push_back(v);
    else eq.push_back(v);
  }
  // Oracle sweep (independent enumeration, frozen): six strict violations.
  const std::vector<PairVerdict> want_lt{{2, 2, Ordering::less}, {2, 3, Ordering::less},
                                         {2, 4, Ordering::less}, {2, 5, Ordering::less},
                                         {3, 3, Ordering::less}, {3, 5, Ordering::less}};
  const std::vector<PairVerdict> want_eq{{2, 6, Ordering::equal}, {2, 7, Ordering::equal},
                                         {3, 4, Ordering::equal}};
  o.check(lt == want_lt, "strict violations (m >= 2): " + pairs(lt));
  o.check(eq == want_eq, "equalities (m >= 2): " + pairs(eq));
  bool col_ok = col1.size() == 24;
  for (const auto& v : col1) col_ok = col_ok && v.relation == Ordering::less;
  o.check(col_ok, "column 1: " + std::to_string(col1.size()) + " LT of 24");
  bool small = true;
  for (const auto& v : lt) small = small && v.m + v.n <= 9;
  for (const auto& v : eq) small = small && v.m + v.n <= 9;
  o.check(small, "all m,n >= 2 exceptions have m + n <= 9");
  o.note("p(3)p(5) = 21 < 22 = p(8): (3,5) is a strict violation as well");
}

void ac5_golden_sets(Outcome& o) {
  struct Case {
    const char* selector;
    std::size_t n0, lo, hi;
    std::vector<std::size_t> A;
    bool residual;
  };
  const std::vector<Case> cases{
      {"overpartition", 4, 1, 2, range(1, 2), false},
      {"plane", 12, 2, 10, range(2, 10), true},
      {"regular:2", 33, 3, 31, range(3, 31), true},
      {"regular:3", 58, 2, 56, range(2, 56), true},
  };
  for (const auto& c : cases) {
    const auto t = builtin(c.selector, 2 * c.n0);
    const auto crit = evaluate_criterion(t, c.n0, Strictness::strict);
    o.check(crit.condition_holds && crit.A == c.A,
            std::string(c.selector) + ": condition " + (crit.condition_holds ? "holds" : "fails") +
                ", A = " + set_summary(crit));
    if (!c.residual) continue;
    const auto r = bo_rectangle(t, c.lo, c.hi, c.lo, c.hi, Strictness::strict, 4);
    const auto v = BOReport::canonical(r.violations());
    std::size_t largest = 0, lt = 0;
    for (const auto& p : v) {
      largest = std::max(largest, p.m + p.n);
      lt += p.relation == Ordering::less;
    }
    // Equalities are not counted against the requirement; only alpha(m)alpha(n) < alpha(m+n).
    o.check(lt == 0, std::string(c.selector) + " residual " + r.region + ": " + std::to_string(lt) +
                         " LT, " + std::to_string(v.size() - lt) + " EQ (required: 0 LT)");
    if (!v.empty())
      o.note(std::string(c.selector) + " violations all have m + n <= " + std::to_string(largest) +
             ": " + pairs(v));
  }
  o.note("the zero-violation requirement contradicts exact arithmetic, e.g. pp(2)^2 = 9 < 13 = pp(4),");
  o.note("p2(4)^2 = 4 < 6 = p2(8), p3(3)^2 = 4 < 7 = p3(6); known results for these sequences");
  o.note("list finitely many small exceptions, which is what the sweeps reproduce");
}

void ac6_overpartitions(Outcome& o) {
  const std::size_t H = 200;
  const auto t = builtin("overpartition", H);
  std::vector<PairVerdict> eq_inner, lt, eq_zero;
  for (std::size_t m = 0; m <= H; ++m)
    for (std::size_t n = 0; m + n <= H; ++n) {
      const auto v = bo_pair(t, m, n);
      if (v.relation == Ordering::less) lt.push_back(v);
      if (v.relation != Ordering::equal) continue;
      (m == 0 || n == 0 ? eq_zero : eq_inner).push_back(v);
    }
  const std::vector<PairVerdict> want{
      {1, 1, Ordering::equal}, {1, 2, Ordering::equal}, {2, 1, Ordering::equal}};
  o.check(eq_inner == want, "equalities with m, n >= 1: " + pairs(eq_inner));
  const std::size_t zero_pairs = 2 * (H + 1) - 1;
  o.check(eq_zero.size() == zero_pairs,
          "every pair with m = 0 or n = 0 is an equality (" + std::to_string(eq_zero.size()) + " of " +
              std::to_string(zero_pairs) + ")");
  o.check(lt.empty(), "no strict failures for m + n <= 200");
}

void ac7_beta(Outcome& o) {
  const auto t = builtin("partition", 200);
  const auto beta = build_beta_extension(t, 26);
  o.check(beta[0] > ExactRational(1), "beta(0) > 1 (beta(0) ~ " + std::to_string(beta[0].value().get_d()) + ")");
  const auto lc = scan_log_concavity(beta, 1, 199, Strictness::weak);
  o.check(lc.failures().empty(), "weakly log-concave on [1,199]; failures " + index_list(lc.failures()));
  const auto akk = akk_check(beta, 200, AkkMode::logconcave_gt1);
  o.check(akk.hypothesis_holds, "log-concave with alpha(0) > 1");
  o.check(akk.conclusion_holds, "strict inequality for all 0 <= m <= n, m + n <= 200; failures " +
                                    pairs(akk.conclusion_failures));
}

void ac8_example(Outcome& o) {
  const auto t = testing_support::example31();
  o.check(t.max_index() == 12 && t[4] == ExactRational(15), "table loaded from example31.terms");
  o.check(cmp_root_vs_ratio(t[4], 4, q(3, 1)) == Ordering::less && threshold_ratio(t, 4) == q(3, 1),
          "15^(1/4) < 3 = alpha(4)/alpha(3)");
  o.check(cmp_root_vs_ratio(t[2], 2, q(3, 1)) == Ordering::less, "sqrt 7 < 3");
  o.check(!theorem1_condition(t, 4, Strictness::strict), "n0 condition false at n0 = 4");
  o.check(t[3] * t[3] / (t[2] * t[4]) == q(25, 105) && t[4] * t[4] / (t[3] * t[5]) == q(225, 150) &&
              t[5] * t[5] / (t[4] * t[6]) == q(900, 225),
          "log-concavity ratios 25/105, 225/150, 900/225");

  struct Listed {
    std::size_t a, b;
    ExactRational lhs, rhs;
  };
  const std::vector<Listed> listed{
      {2, 2, 49, 15}, {2, 3, 35, 30}, {2, 4, 105, 15}, {3, 3, 25, 15}, {3, 4, 75, 5}, {4, 4, 225, q(5, 4)}};
  for (const auto& l : listed) {
    const auto v = bo_pair(t, l.a, l.b);
    o.check(t[l.a] * t[l.b] == l.lhs && t[l.a + l.b] == l.rhs && v.relation == Ordering::greater,
            "alpha(" + std::to_string(l.a) + ")alpha(" + std::to_string(l.b) + ") = " + l.lhs.str() +
                " > " + l.rhs.str());
  }
  // The general families (a >= 2, b >= 5 and a, b >= 5) within the table.
  std::vector<PairVerdict> bad;
  for (std::size_t a = 2; a <= 12; ++a)
    for (std::size_t b = a; a + b <= 12; ++b)
      if (bo_pair(t, a, b).relation != Ordering::greater) bad.push_back(bo_pair(t, a, b));
  o.check(bad.empty(), "every pair 2 <= a <= b, a + b <= 12 is strict; failures " + pairs(bad));
}

void ac9_proposition(Outcome& o) {
  const auto t = builtin("overpartition", 101);
  o.check(scan_log_concavity(t, 1, 100, Strictness::weak).failures().empty(),
          "overpartitions weakly log-concave on [1,100]");
  std::vector<std::size_t> fails;
  for (std::size_t n = 1; n <= 100; ++n)
    if (!necessary_condition(t, n)) fails.push_back(n);
  o.check(fails.empty(), "necessary condition on [1,100]; failures " + index_list(fails));
}

void ac10_determinism(Outcome& o) {
  auto run_cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "seqineq");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = run_cli({"report", "--seq", "partition", "--no-timing", "--jobs", "1"});
  const auto b = run_cli({"report", "--seq", "partition", "--no-timing", "--jobs", "1"});
  const auto c = run_cli({"report", "--seq", "partition", "--no-timing", "--jobs", "8"});
  o.check(a.first == 0 && b.first == 0 && c.first == 0, "report exit codes 0");
  o.check(!a.second.empty() && a.second == b.second, "two runs byte-identical (" +
                                                         std::to_string(a.second.size()) + " bytes)");
  o.check(a.second == c.second, "--jobs 1 and --jobs 8 byte-identical");

  bool round_trip = true;
  for (const char* sel : {"partition", "plane", "overpartition", "regular:2", "regular:3"}) {
    const auto gen = run_cli({"gen", "--seq", sel, "--n", "200"});
    std::istringstream in(gen.second);
    const auto back = parse_terms(in, {sel, ExplicitTermsSource{"round-trip"}, 0});
    round_trip = round_trip && gen.first == 0 && format_terms(back) == gen.second &&
                 back.max_index() == 200 && back[200] == builtin(sel, 200)[200];
  }
  o.check(round_trip, "gen -> load -> format is exact for all builtins, n = 200");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "generators match enumeration oracles", 10, ac1_generators},
      {2, "ratios reproduced exactly", 5, ac2_ratios},
      {3, "partition log-concavity frontier", 5, ac3_frontier},
      {4, "partition criterion pipeline", 5, ac4_partition_pipeline},
      {5, "golden A sets and residual sweeps", 60, ac5_golden_sets},
      {6, "overpartition exceptions", 0, ac6_overpartitions},
      {7, "beta extension proof path", 30, ac7_beta},
      {8, "sufficiency is not necessity", 0, ac8_example},
      {9, "necessary condition on overpartitions", 0, ac9_proposition},
      {10, "determinism and round trip", 0, ac10_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) o.check(ms <= c.limit_s * 1000, "runtime within limit");
    if (!o.pass) ++failed;

    char timing[64];
    if (c.limit_s > 0)
      std::snprintf(timing, sizeof timing, "(%.0f ms, limit %.0f s)", ms, c.limit_s);
    else
      std::snprintf(timing, sizeof timing, "(%.0f ms)", ms);
    std::cout << "AC" << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << " " << timing
              << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
