#pragma once

// Exact integers and rationals. Storage is GMP; every value is kept in
// canonical form (reduced, positive denominator, zero as 0/1).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "kinalg/error.hpp"

namespace kinalg {

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Accepts an optional sign followed by at least one decimal digit.
inline bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!is_digit(s[i])) return false;
  return true;
}

}  // namespace detail

class BigInteger {
 public:
  BigInteger() = default;
  BigInteger(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit BigInteger(const mpz_class& v) : v_(v) {}

  static BigInteger parse(std::string_view text) {
    if (!detail::valid_integer_text(text))
      throw ParseError("malformed integer '" + std::string(text) + "'", 0, 0);
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return BigInteger(mpz_class(s, 10));
  }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  BigInteger abs() const { return BigInteger(mpz_class(::abs(v_))); }
  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const { return v_.get_si(); }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const { return v_.get_str(10); }
  const mpz_class& raw() const { return v_; }

  /// Number of 64-bit limbs in the magnitude; 0 for zero.
  std::size_t limb_count() const { return mpz_size(v_.get_mpz_t()); }

  /// Exact square root when the value is a perfect square.
  std::optional<BigInteger> exact_sqrt() const {
    if (sign() < 0 || !mpz_perfect_square_p(v_.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v_.get_mpz_t());
    return BigInteger(r);
  }

  friend BigInteger gcd(const BigInteger& a, const BigInteger& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return BigInteger(g);
  }

  BigInteger operator-() const { return BigInteger(mpz_class(-v_)); }
  friend BigInteger operator+(const BigInteger& a, const BigInteger& b) {
    return BigInteger(mpz_class(a.v_ + b.v_));
  }
  friend BigInteger operator-(const BigInteger& a, const BigInteger& b) {
    return BigInteger(mpz_class(a.v_ - b.v_));
  }
  friend BigInteger operator*(const BigInteger& a, const BigInteger& b) {
    return BigInteger(mpz_class(a.v_ * b.v_));
  }
  /// Truncating division; throws DivisionByZero.
  friend BigInteger operator/(const BigInteger& a, const BigInteger& b) {
    if (b.is_zero()) throw DivisionByZero();
    return BigInteger(mpz_class(a.v_ / b.v_));
  }
  friend BigInteger operator%(const BigInteger& a, const BigInteger& b) {
    if (b.is_zero()) throw DivisionByZero();
    return BigInteger(mpz_class(a.v_ % b.v_));
  }
  BigInteger& operator+=(const BigInteger& o) { v_ += o.v_; return *this; }
  BigInteger& operator-=(const BigInteger& o) { v_ -= o.v_; return *this; }
  BigInteger& operator*=(const BigInteger& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const BigInteger& a, const BigInteger& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigInteger& a,
                                          const BigInteger& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const BigInteger& x) {
    return os << x.to_string();
  }

 private:
  mpz_class v_;
};

enum class ScalarOp { add, sub, mul, div };

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInteger& n) : v_(n.raw()) {}  // NOLINT
  Rational(long num, long den) : Rational(BigInteger(num), BigInteger(den)) {}
  Rational(const BigInteger& num, const BigInteger& den) {
    if (den.is_zero()) throw DivisionByZero();
    v_ = mpq_class(num.raw(), den.raw());
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "n" or "p/q" with optional sign. Decimal points are rejected.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInteger::parse(text));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
      throw ParseError("malformed rational '" + std::string(text) + "'", 0, 0);
    BigInteger num = BigInteger::parse(text.substr(0, slash));
    BigInteger den = BigInteger::parse(den_text);
    if (den.is_zero())
      throw ParseError("zero denominator in '" + std::string(text) + "'", 0, 0);
    return Rational(num, den);
  }

  BigInteger numerator() const { return BigInteger(v_.get_num()); }
  BigInteger denominator() const { return BigInteger(v_.get_den()); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return cmp(v_, 1) == 0; }
  bool is_integer() const { return cmp(v_.get_den(), 1) == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }

  std::string to_string() const {
    if (is_integer()) return v_.get_num().get_str(10);
    return v_.get_num().get_str(10) + "/" + v_.get_den().get_str(10);
  }

  /// Square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const {
    auto n = numerator().exact_sqrt();
    auto d = denominator().exact_sqrt();
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
  }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1 / v_));
  }

  Rational pow(unsigned e) const {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Division that reports a zero divisor through the return value.
  static std::optional<Rational> checked_divide(const Rational& a,
                                                const Rational& b) {
    if (b.is_zero()) return std::nullopt;
    return Rational(mpq_class(a.v_ / b.v_));
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    Rational r;
    mpq_div(r.v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return r;
  }
  Rational& operator+=(const Rational& o) {
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.to_string();
  }

 private:
  mpq_class v_;
};

/// Four-way arithmetic with an explicit error value for division by zero.
inline std::optional<Rational> scalar_arith(const Rational& a, const Rational& b,
                                            ScalarOp op) {
  switch (op) {
    case ScalarOp::add: return a + b;
    case ScalarOp::sub: return a - b;
    case ScalarOp::mul: return a * b;
    case ScalarOp::div: return Rational::checked_divide(a, b);
  }
  return std::nullopt;
}

inline std::strong_ordering scalar_cmp(const Rational& a, const Rational& b) {
  return a <=> b;
}

}  // namespace kinalg

template <>
struct std::hash<kinalg::Rational> {
  std::size_t operator()(const kinalg::Rational& r) const noexcept {
    return std::hash<std::string>()(r.to_string());
  }
};
