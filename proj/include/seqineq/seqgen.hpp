#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "seqineq/exact.hpp"

namespace seqineq {

/// Exponent rule d -> c_d of an Euler product prod_{d>=1} (1 - q^d)^(-c_d).
struct ExponentRule {
  std::string name;
  std::function<long(std::size_t)> exponent;
};

namespace rules {

inline ExponentRule partition() {
  return {"partition", [](std::size_t) { return 1L; }};
}

inline ExponentRule plane() {
  return {"plane", [](std::size_t d) { return static_cast<long>(d); }};
}

// (1 + q^n) / (1 - q^n) = (1 - q^{2n}) / (1 - q^n)^2, so odd d carries
// exponent 2 and even d carries 2 - 1 = 1.
inline ExponentRule overpartition() {
  return {"overpartition", [](std::size_t d) { return d % 2 == 1 ? 2L : 1L; }};
}

inline ExponentRule regular(unsigned k) {
  if (k < 2) throw std::invalid_argument("k-regular partitions need k >= 2");
  return {"regular:" + std::to_string(k),
          [k](std::size_t d) { return d % k == 0 ? 0L : 1L; }};
}

}  // namespace rules

struct EulerProductSource {
  ExponentRule rule;
};
struct PentagonalSource {};
struct ExplicitTermsSource {
  std::filesystem::path path;
};
/// Tables computed from another table (e.g. the geometric backfill).
struct DerivedSource {
  std::string description;
};

using SequenceSource =
    std::variant<EulerProductSource, PentagonalSource, ExplicitTermsSource, DerivedSource>;

struct SequenceSpec {
  std::string name;
  SequenceSource source;
  std::size_t length = 0;  // table holds indices 0..length
};

/**
 * Immutable dense table alpha(0..N) of strictly positive exact terms.
 */
class SeqTable {
 public:
  SeqTable(SequenceSpec spec, std::vector<ExactRational> terms)
      : spec_(std::move(spec)), terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("no terms");
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].sign() <= 0)
        throw std::domain_error("nonpositive term at index " + std::to_string(i));
    spec_.length = terms_.size() - 1;
  }

  const SequenceSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }
  std::span<const ExactRational> terms() const noexcept { return terms_; }
  std::size_t max_index() const noexcept { return terms_.size() - 1; }

  const ExactRational& operator[](std::size_t n) const { return terms_[n]; }
  const ExactRational& at(std::size_t n) const {
    if (n >= terms_.size())
      throw std::out_of_range("index " + std::to_string(n) + " beyond table of " + spec_.name +
                              " (max index " + std::to_string(max_index()) + ")");
    return terms_[n];
  }

  bool is_integer_valued() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.is_integer(); });
  }

  /// First `n + 1` terms as a new table.
  SeqTable prefix(std::size_t n) const {
    at(n);
    SequenceSpec s = spec_;
    s.length = n;
    return SeqTable(std::move(s), {terms_.begin(), terms_.begin() + static_cast<long>(n) + 1});
  }

 private:
  SequenceSpec spec_;
  std::vector<ExactRational> terms_;
};

/// sigma_e(k) = sum of d^e over the divisors d of k.
inline BigInt divisor_power_sum(std::size_t k, unsigned long e) {
  if (k == 0) throw std::domain_error("divisor_power_sum needs k >= 1");
  BigInt total = 0;
  for (std::size_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    total += ipow(BigInt(static_cast<unsigned long>(d)), e);
    const std::size_t other = k / d;
    if (other != d) total += ipow(BigInt(static_cast<unsigned long>(other)), e);
  }
  return total;
}

/**
 * Coefficients of prod_{d>=1} (1 - q^d)^(-c_d) up to q^N through the
 * logarithmic-derivative recurrence
 *
 *     n a(n) = sum_{k=1}^{n} b(k) a(n-k),   b(k) = sum_{d|k} d c_d,   a(0) = 1.
 *
 * Each division by n must be exact; a remainder signals a broken rule.
 */
inline SeqTable expand_euler_product(const ExponentRule& rule, std::size_t N) {
  std::vector<BigInt> b(N + 1, 0);
  for (std::size_t d = 1; d <= N; ++d) {
    const long c = rule.exponent(d);
    if (c == 0) continue;
    const BigInt weight = BigInt(static_cast<unsigned long>(d)) * c;
    for (std::size_t k = d; k <= N; k += d) b[k] += weight;
  }

  std::vector<BigInt> a(N + 1);
  a[0] = 1;
  BigInt sum;
  for (std::size_t n = 1; n <= N; ++n) {
    sum = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (b[k] != 0) sum += b[k] * a[n - k];
    if (mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(n)) == 0)
      throw std::logic_error("Euler product recurrence left a remainder at n = " +
                             std::to_string(n) + " for rule " + rule.name);
    mpz_divexact_ui(a[n].get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(n));
  }

  std::vector<ExactRational> terms;
  terms.reserve(N + 1);
  for (auto& v : a) terms.emplace_back(std::move(v));
  return SeqTable({rule.name, EulerProductSource{rule}, N}, std::move(terms));
}

/// p(0..N) through Euler's pentagonal number recurrence.
inline SeqTable partition_pentagonal(std::size_t N) {
  std::vector<BigInt> p(N + 1, 0);
  p[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt acc = 0;
    for (std::size_t j = 1;; ++j) {
      const std::size_t g1 = j * (3 * j - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = j * (3 * j + 1) / 2;
      const bool add = (j % 2) == 1;
      if (add) acc += p[n - g1]; else acc -= p[n - g1];
      if (g2 <= n) {
        if (add) acc += p[n - g2]; else acc -= p[n - g2];
      }
    }
    p[n] = std::move(acc);
  }
  std::vector<ExactRational> terms;
  terms.reserve(N + 1);
  for (auto& v : p) terms.emplace_back(std::move(v));
  return SeqTable({"partition", PentagonalSource{}, N}, std::move(terms));
}

// ---------------------------------------------------------------------------
// Terms files: one "index value" pair per line, indices 0, 1, 2, ...

/// Malformed or unusable terms-file content.
class TermsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TermsParseError : public TermsError {
 public:
  TermsParseError(std::size_t line, const std::string& reason)
      : TermsError("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline SeqTable parse_terms(std::istream& in, SequenceSpec spec) {
  std::vector<ExactRational> terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string index_text, value_text, extra;
    fields >> index_text >> value_text;
    if (value_text.empty()) throw TermsParseError(line_no, "expected 'index value'");
    if (fields >> extra) throw TermsParseError(line_no, "trailing field '" + extra + "'");

    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size())
      throw TermsParseError(line_no, "bad index '" + index_text + "'");
    if (index != terms.size())
      throw TermsParseError(line_no, "gap in indices: expected " + std::to_string(terms.size()) +
                                         ", got " + std::to_string(index));

    ExactRational value;
    try {
      value = ExactRational::parse(value_text);
    } catch (const std::exception& e) {
      throw TermsParseError(line_no, e.what());
    }
    if (value.sign() <= 0) throw TermsError("nonpositive term at index " + std::to_string(index));
    terms.push_back(std::move(value));
  }
  if (terms.empty()) throw TermsError("no terms");
  spec.length = terms.size() - 1;
  return SeqTable(std::move(spec), std::move(terms));
}

inline SeqTable load_terms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::filesystem::filesystem_error("cannot open terms file", path,
                                                   std::make_error_code(std::errc::no_such_file_or_directory));
  return parse_terms(in, {path.stem().string(), ExplicitTermsSource{path}, 0});
}

inline std::string format_terms(const SeqTable& table) {
  std::string out;
  for (std::size_t i = 0; i <= table.max_index(); ++i) {
    out += std::to_string(i);
    out += ' ';
    out += table[i].str();
    out += '\n';
  }
  return out;
}

inline void write_terms(const SeqTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot write terms file", path,
                                                    std::make_error_code(std::errc::io_error));
  out << format_terms(table);
  if (!out) throw std::filesystem::filesystem_error("write failed", path,
                                                    std::make_error_code(std::errc::io_error));
}

// ---------------------------------------------------------------------------
// Selectors: partition | plane | overpartition | regular:k | file:PATH

inline SequenceSpec parse_selector(std::string_view selector, std::size_t N) {
  if (selector == "partition") return {"partition", PentagonalSource{}, N};
  if (selector == "plane") return {"plane", EulerProductSource{rules::plane()}, N};
  if (selector == "overpartition")
    return {"overpartition", EulerProductSource{rules::overpartition()}, N};
  if (selector.starts_with("regular:")) {
    const std::string_view k_text = selector.substr(8);
    unsigned k = 0;
    const auto [ptr, ec] = std::from_chars(k_text.data(), k_text.data() + k_text.size(), k);
    if (ec != std::errc() || ptr != k_text.data() + k_text.size() || k < 2)
      throw std::invalid_argument("bad k in selector '" + std::string(selector) + "'");
    auto rule = rules::regular(k);
    std::string name = rule.name;
    return {std::move(name), EulerProductSource{std::move(rule)}, N};
  }
  if (selector.starts_with("file:") && selector.size() > 5) {
    std::filesystem::path path(std::string(selector.substr(5)));
    return {path.stem().string(), ExplicitTermsSource{path}, N};
  }
  throw std::invalid_argument("unknown sequence '" + std::string(selector) + "'");
}

/// Materializes a spec. Explicit-terms files are truncated to `spec.length`
/// and must hold at least that many terms.
inline SeqTable generate(const SequenceSpec& spec) {
  return std::visit(
      [&](const auto& src) -> SeqTable {
        using S = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<S, EulerProductSource>) {
          SeqTable t = expand_euler_product(src.rule, spec.length);
          return SeqTable(spec, {t.terms().begin(), t.terms().end()});
        } else if constexpr (std::is_same_v<S, PentagonalSource>) {
          return partition_pentagonal(spec.length);
        } else if constexpr (std::is_same_v<S, ExplicitTermsSource>) {
          SeqTable t = load_terms(src.path);
          if (t.max_index() < spec.length)
            throw std::out_of_range("terms file " + src.path.string() + " ends at index " +
                                    std::to_string(t.max_index()) + ", need " +
                                    std::to_string(spec.length));
          return t.prefix(spec.length);
        } else {
          throw std::invalid_argument("derived tables cannot be regenerated from their spec");
        }
      },
      spec.source);
}

/// On-disk cache of generated tables keyed by (rule, N); files use the terms format.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const SequenceSpec& spec) const {
    std::string key = spec.name;
    std::replace(key.begin(), key.end(), ':', '-');
    return dir_ / (key + "_n" + std::to_string(spec.length) + ".terms");
  }

  SeqTable get_or_generate(const SequenceSpec& spec) const {
    if (std::holds_alternative<ExplicitTermsSource>(spec.source) ||
        std::holds_alternative<DerivedSource>(spec.source))
      return generate(spec);
    const auto path = path_for(spec);
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      SeqTable cached = parse_terms(in, spec);
      if (cached.max_index() == spec.length) return cached;
    }
    SeqTable fresh = generate(spec);
    std::filesystem::create_directories(dir_);
    write_terms(fresh, path);
    return fresh;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace seqineq
