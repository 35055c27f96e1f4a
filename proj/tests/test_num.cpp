#include <gtest/gtest.h>

#include <random>

#include "kinalg/num.hpp"

using kinalg::BigInteger;
using kinalg::Rational;
using kinalg::ScalarOp;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST(ScalarArith, Examples) {
  EXPECT_EQ(*kinalg::scalar_arith(q("1/2"), q("1/3"), ScalarOp::add), q("5/6"));
  auto z = *kinalg::scalar_arith(q("7/4"), q("7/4"), ScalarOp::sub);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.denominator(), BigInteger(1));
  // cross-multiplied and reduced by hand: 130*56 = 7280, 113*65 = 7345, gcd 65
  EXPECT_EQ(*kinalg::scalar_arith(q("130/113"), q("56/65"), ScalarOp::mul), q("112/113"));
}

TEST(ScalarArith, DivisionByZeroIsAValue) {
  EXPECT_FALSE(kinalg::scalar_arith(q("1/2"), Rational(0), ScalarOp::div).has_value());
  EXPECT_THROW(q("1/2") / Rational(0), kinalg::DivisionByZero);
  EXPECT_THROW(Rational(1, 0), kinalg::DivisionByZero);
}

TEST(ScalarCmp, Examples) {
  EXPECT_EQ(kinalg::scalar_cmp(q("1/2"), q("1/2")), std::strong_ordering::equal);
  EXPECT_EQ(kinalg::scalar_cmp(q("-15/113"), Rational(0)), std::strong_ordering::less);
  EXPECT_EQ(kinalg::scalar_cmp(q("33/65"), q("112/113")), std::strong_ordering::less);
}

TEST(Rational, CanonicalForm) {
  Rational r(BigInteger(6), BigInteger(-4));
  EXPECT_EQ(r.numerator(), BigInteger(-3));
  EXPECT_EQ(r.denominator(), BigInteger(2));
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 5).to_string(), "0");
  EXPECT_EQ(q("4/6"), q("2/3"));
}

TEST(Rational, ParseRejectsMalformed) {
  EXPECT_THROW(q("1.5"), kinalg::ParseError);
  EXPECT_THROW(q("1/0"), kinalg::ParseError);
  EXPECT_THROW(q("1/-2"), kinalg::ParseError);
  EXPECT_THROW(q(""), kinalg::ParseError);
  EXPECT_THROW(q("abc"), kinalg::ParseError);
  EXPECT_EQ(q("-7/21"), Rational(-1, 3));
}

TEST(Rational, RoundTripLargeValues) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    BigInteger n = BigInteger(static_cast<long>(rng() >> 2)) * BigInteger(static_cast<long>(rng() >> 2));
    BigInteger d = BigInteger(static_cast<long>(rng() >> 3) | 1) * BigInteger(static_cast<long>(rng() >> 3) | 1);
    if (rng() & 1) n = -n;
    Rational r(n, d);
    EXPECT_EQ(Rational::parse(r.to_string()), r);
    EXPECT_TRUE(gcd(r.numerator().abs(), r.denominator()) == BigInteger(1));
    EXPECT_GT(r.denominator().sign(), 0);
  }
}

TEST(Rational, RingAxiomsWithWideMagnitudes) {
  std::mt19937_64 rng(11);
  auto big = [&] {
    BigInteger n = BigInteger(static_cast<long>(rng() >> 1));
    n = n * BigInteger(static_cast<long>(rng() >> 1)) + BigInteger(static_cast<long>(rng() >> 40));
    if (rng() & 1) n = -n;
    BigInteger d = BigInteger(static_cast<long>(rng() >> 1) | 1) * BigInteger(static_cast<long>(rng() >> 20) | 1);
    return Rational(n, d);
  };
  for (int i = 0; i < 300; ++i) {
    Rational a = big(), b = big(), c = big();
    EXPECT_GT(a.numerator().limb_count() + a.denominator().limb_count(), 2u);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(Rational, ExactSqrt) {
  EXPECT_EQ(*q("9/16").exact_sqrt(), q("3/4"));
  EXPECT_FALSE(q("1/2").exact_sqrt().has_value());
  EXPECT_FALSE(q("-4").exact_sqrt().has_value());
}
