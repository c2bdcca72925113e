#pragma once

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace seqineq {

using BigInt = mpz_class;

/// Three-way result of every exact comparison in the library.
enum class Ordering { less, equal, greater };

constexpr Ordering ordering_from_sign(int c) noexcept {
  return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal);
}

constexpr Ordering reversed(Ordering o) noexcept {
  switch (o) {
    case Ordering::less: return Ordering::greater;
    case Ordering::greater: return Ordering::less;
    default: return Ordering::equal;
  }
}

constexpr std::string_view to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::less: return "LT";
    case Ordering::equal: return "EQ";
    default: return "GT";
  }
}

inline Ordering parse_ordering(std::string_view s) {
  if (s == "LT") return Ordering::less;
  if (s == "EQ") return Ordering::equal;
  if (s == "GT") return Ordering::greater;
  throw std::invalid_argument("unknown relation '" + std::string(s) + "'");
}

/**
 * Arbitrary-precision rational number held in canonical form: the
 * denominator is positive and coprime to the numerator.
 *
 * Integers are the denominator-1 case. Values are immutable once built;
 * every arithmetic operator returns a fresh canonical value.
 */
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ExactRational(BigInt integer) : value_(std::move(integer)) {}

  ExactRational(BigInt numerator, BigInt denominator) {
    if (denominator == 0) throw std::domain_error("zero denominator");
    value_ = mpq_class(std::move(numerator), std::move(denominator));
    value_.canonicalize();
    check_canonical();
  }

  /// Parses "P" or "P/Q" in base 10; a leading '-' on P is the only sign allowed.
  static ExactRational parse(std::string_view text) {
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!digits_ok(num, true))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return ExactRational(BigInt(std::string(num), 10));
    const std::string_view den = text.substr(slash + 1);
    if (!digits_ok(den, false))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return ExactRational(BigInt(std::string(num), 10), BigInt(std::string(den), 10));
  }

  const mpq_class& value() const noexcept { return value_; }
  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  int sign() const noexcept { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Canonical text form: "P" when the denominator is 1, otherwise "P/Q".
  std::string str() const {
    if (is_integer()) return value_.get_num().get_str(10);
    return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
  }

  ExactRational pow(unsigned long e) const {
    ExactRational r;
    mpz_pow_ui(r.value_.get_num_mpz_t(), value_.get_num_mpz_t(), e);
    mpz_pow_ui(r.value_.get_den_mpz_t(), value_.get_den_mpz_t(), e);
    r.check_canonical();
    return r;
  }

  ExactRational reciprocal() const {
    if (sign() == 0) throw std::domain_error("reciprocal of zero");
    return ExactRational(value_.get_den(), value_.get_num());
  }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return from(a.value_ + b.value_);
  }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    return from(a.value_ - b.value_);
  }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return from(a.value_ * b.value_);
  }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.sign() == 0) throw std::domain_error("division by zero");
    return from(a.value_ / b.value_);
  }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    return ::cmp(a.value_, b.value_) <=> 0;
  }

 private:
  static ExactRational from(mpq_class v) {
    ExactRational r;
    r.value_ = std::move(v);
    r.check_canonical();
    return r;
  }

  void check_canonical() const {
#ifndef NDEBUG
    BigInt g;
    mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    assert(value_.get_den() > 0);
    assert(g == 1);
#endif
  }

  mpq_class value_{0};
};

inline Ordering cmp(const ExactRational& x, const ExactRational& y) {
  return ordering_from_sign(::cmp(x.value(), y.value()));
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

namespace detail {
inline void require_positive(const ExactRational& v, const char* what) {
  if (v.sign() <= 0) throw std::domain_error(std::string(what) + " must be positive, got " + v.str());
}
}  // namespace detail

/**
 * Orders x^(1/a) against r without taking roots: with x = P/Q and r = N/D
 * the answer is the ordering of P * D^a against N^a * Q.
 */
inline Ordering cmp_root_vs_ratio(const ExactRational& x, unsigned long a, const ExactRational& r) {
  detail::require_positive(x, "radicand");
  detail::require_positive(r, "ratio");
  if (a == 0) throw std::domain_error("root index must be >= 1");
  const BigInt lhs = x.numerator() * ipow(r.denominator(), a);
  const BigInt rhs = ipow(r.numerator(), a) * x.denominator();
  return ordering_from_sign(::cmp(lhs, rhs));
}

/// Orders x^(1/a) against y^(1/b) via x^b against y^a.
inline Ordering cmp_roots(const ExactRational& x, unsigned long a, const ExactRational& y,
                          unsigned long b) {
  detail::require_positive(x, "left radicand");
  detail::require_positive(y, "right radicand");
  if (a == 0 || b == 0) throw std::domain_error("root index must be >= 1");
  const BigInt lhs = ipow(x.numerator(), b) * ipow(y.denominator(), a);
  const BigInt rhs = ipow(y.numerator(), a) * ipow(x.denominator(), b);
  return ordering_from_sign(::cmp(lhs, rhs));
}

}  // namespace seqineq
