#include <gtest/gtest.h>

#include <random>

#include "kinalg/poly.hpp"

using namespace kinalg;

namespace {

Universe xy() {
  static Universe u = make_universe({"x", "y"});
  return u;
}
Polynomial P(const char* s, const Universe& u) { return Polynomial::parse(s, u); }

Polynomial random_poly(std::mt19937& rng, const Universe& u, unsigned max_deg, int nterms) {
  std::vector<Term> t;
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 4);
  for (int i = 0; i < nterms; ++i) {
    Monomial m(u->size());
    unsigned budget = std::uniform_int_distribution<unsigned>(0, max_deg)(rng);
    for (unsigned k = 0; k < budget; ++k) {
      std::size_t v = std::uniform_int_distribution<std::size_t>(0, u->size() - 1)(rng);
      m.set(v, m[v] + 1);
    }
    t.push_back({m, Rational(coef(rng), den(rng))});
  }
  return Polynomial::from_terms(u, t);
}

}  // namespace

TEST(PolyArith, Examples) {
  auto u = xy();
  EXPECT_EQ(P("x+y", u) * P("x-y", u), P("x^2-y^2", u));
  EXPECT_EQ(P("x+y", u) + Polynomial(u), P("x+y", u));
  auto ua = make_universe({"a1", "a2", "a0"});
  auto g0 = P("2*a2^2 + 2*a0^2 - 1", ua);
  auto r = g0 + P("a1 - a0", ua) * Polynomial(ua);
  EXPECT_EQ(r, g0);
  EXPECT_EQ(r.to_string(), "2*a2^2 + 2*a0^2 - 1");
}

TEST(PolyArith, UniverseMismatch) {
  auto u1 = make_universe({"x"});
  auto u2 = make_universe({"y"});
  EXPECT_THROW(Polynomial::variable(u1, "x") + Polynomial::variable(u2, "y"), UniverseMismatch);
}

TEST(MonomialOrder, Examples) {
  Monomial x2y{2, 1}, xy3{1, 3};
  EXPECT_EQ(MonomialOrder::lex(2).compare(x2y, xy3), std::strong_ordering::greater);
  EXPECT_EQ(MonomialOrder::degrevlex(2).compare(x2y, xy3), std::strong_ordering::less);

  auto u = make_universe({"a3", "a1", "b0", "a2"});
  auto order = MonomialOrder::parse("block:lex(a3,a1)|degrevlex(*)", *u);
  Monomial a3b0{1, 0, 1, 0}, a1a2{0, 1, 0, 1};
  EXPECT_EQ(order.compare(a3b0, a1a2), std::strong_ordering::greater);
  EXPECT_EQ(order.describe(*u), "block:lex(a3,a1)|degrevlex(b0,a2)");
}

TEST(MonomialOrder, DegrevlexTieBreak) {
  // same degree: the monomial with smaller power of the last variable is larger
  Monomial a{1, 1, 0}, b{1, 0, 1};
  EXPECT_EQ(MonomialOrder::degrevlex(3).compare(a, b), std::strong_ordering::greater);
  Monomial c{0, 2, 0}, d{1, 0, 1};
  EXPECT_EQ(MonomialOrder::degrevlex(3).compare(c, d), std::strong_ordering::greater);
}

TEST(MonomialOrder, ParseErrors) {
  auto u = make_universe({"a", "b"});
  EXPECT_THROW(MonomialOrder::parse("deglex", *u), ParseError);
  EXPECT_THROW(MonomialOrder::parse("block:lex(a)", *u), ParseError);
  EXPECT_THROW(MonomialOrder::parse("block:lex(a,c)|lex(b)", *u), ParseError);
}

TEST(MonomialOrder, Laws) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<unsigned> e(0, 3);
  auto mk = [&] { return Monomial{e(rng), e(rng), e(rng), e(rng)}; };
  auto u = make_universe({"p", "q", "r", "s"});
  std::vector<MonomialOrder> orders{MonomialOrder::lex(4), MonomialOrder::degrevlex(4),
                                    MonomialOrder::parse("block:degrevlex(q,s)|lex(*)", *u)};
  for (auto& o : orders) {
    for (int i = 0; i < 2000; ++i) {
      Monomial a = mk(), b = mk(), c = mk();
      auto ab = o.compare(a, b);
      EXPECT_EQ(o.compare(b, a), 0 <=> ab);
      EXPECT_EQ(ab == 0, a == b);
      if (ab > 0 && o.compare(b, c) > 0) EXPECT_TRUE(o.compare(a, c) > 0);
      if (ab > 0) EXPECT_TRUE(o.compare(a * c, b * c) > 0);
      if (!c.is_one()) EXPECT_TRUE(o.compare(a * c, a) > 0);
    }
  }
}

TEST(MultivariateDivide, Examples) {
  auto u = xy();
  auto lex = MonomialOrder::lex(2);
  auto r1 = multivariate_divide(P("x^2", u), {P("x", u)}, lex);
  EXPECT_EQ(r1.quotients[0], P("x", u));
  EXPECT_TRUE(r1.remainder.is_zero());
  auto r2 = multivariate_divide(P("x^2+1", u), {P("y", u)}, lex);
  EXPECT_TRUE(r2.quotients[0].is_zero());
  EXPECT_EQ(r2.remainder, P("x^2+1", u));
  auto ua = make_universe({"a1", "a0"});
  auto r3 = multivariate_divide(P("a1 - a0", ua), {P("a1 - 1*a0", ua)}, MonomialOrder::lex(2));
  EXPECT_TRUE(r3.remainder.is_zero());
}

TEST(MultivariateDivide, ReconstructionProperty) {
  std::mt19937 rng(5);
  auto u = make_universe({"w", "x", "y", "z"});
  for (auto order : {MonomialOrder::lex(4), MonomialOrder::degrevlex(4)}) {
    for (int i = 0; i < 150; ++i) {
      Polynomial f = random_poly(rng, u, 3, 6);
      std::vector<Polynomial> ds;
      int nd = 1 + static_cast<int>(rng() % 3);
      while (static_cast<int>(ds.size()) < nd) {
        Polynomial d = random_poly(rng, u, 3, 3);
        if (!d.is_zero()) ds.push_back(d);
      }
      auto res = multivariate_divide(f, ds, order);
      Polynomial sum = res.remainder;
      for (std::size_t k = 0; k < ds.size(); ++k) sum += res.quotients[k] * ds[k];
      EXPECT_EQ(sum, f);
      for (auto& t : res.remainder.terms())
        for (auto& d : ds) EXPECT_FALSE(d.leading_monomial(order).divides(t.mono));
    }
  }
}

TEST(Substitute, Examples) {
  auto u = make_universe({"a1", "a0", "m1"});
  auto target = make_universe({"a1", "a0"});
  auto f = P("a1 - m1*a0", u);
  auto g = f.substitute({{"m1", Polynomial(target, Rational(5, 6))}}, target);
  EXPECT_EQ(g, P("a1 - 5/6*a0", target));
  EXPECT_EQ(g.to_string(), "a1 - 5/6*a0");

  auto ua = make_universe({"a0", "a1", "a2", "a3"});
  auto n = P("a0^2+a1^2+a2^2+a3^2-1", ua);
  EXPECT_TRUE(n.evaluate(std::map<std::string, Rational>{
                   {"a0", 1}, {"a1", 0}, {"a2", 0}, {"a3", 0}})
                  .is_zero());

  // h1 at a2 = 0 in terms of a0^2 = 1/2 and c2^2 = 3/8
  auto uh = make_universe({"c2", "a2", "a0"});
  auto h1 = P("16*a0^2*(c2^2 - 2*c2*a2 - a0^2) + 1", uh);
  auto at = h1.substitute(std::map<std::string, Rational>{{"a2", 0}});
  Rational sum(0);
  for (auto& t : at.terms()) {
    ASSERT_EQ(t.mono[0] % 2, 0u);
    ASSERT_EQ(t.mono[2] % 2, 0u);
    sum += t.coef * Rational(3, 8).pow(t.mono[0] / 2) * Rational(1, 2).pow(t.mono[2] / 2);
  }
  EXPECT_TRUE(sum.is_zero());
}

TEST(Substitute, UnboundVariableRejected) {
  auto u = make_universe({"a", "b"});
  auto target = make_universe({"a"});
  EXPECT_THROW(P("a*b", u).substitute({}, target), InvalidArgument);
}

TEST(Substitute, RingHomomorphism) {
  std::mt19937 rng(9);
  auto u = make_universe({"w", "x", "y", "z"});
  auto t = make_universe({"s", "t"});
  for (int i = 0; i < 60; ++i) {
    std::map<std::string, Polynomial> b;
    for (auto& n : u->names()) b.emplace(n, random_poly(rng, t, 2, 3));
    Polynomial f = random_poly(rng, u, 3, 4), g = random_poly(rng, u, 3, 4);
    EXPECT_EQ((f * g).substitute(b, t), f.substitute(b, t) * g.substitute(b, t));
    EXPECT_EQ((f + g).substitute(b, t), f.substitute(b, t) + g.substitute(b, t));
  }
}

TEST(PartialDerivative, Examples) {
  auto u = make_universe({"c2", "a2", "a0"});
  EXPECT_EQ(P("2*a2^2 + 2*a0^2 - 1", u).partial_derivative("a0"), P("4*a0", u));
  EXPECT_TRUE(P("7/3", u).partial_derivative("c2").is_zero());
  auto h1 = P("16*a0^2*(c2^2 - 2*c2*a2 - a0^2) + 1", u);
  EXPECT_EQ(h1.partial_derivative("c2"), P("32*a0^2*c2 - 32*a0^2*a2", u));
}

TEST(TextFormat, RoundTrip) {
  auto u = make_universe({"a3", "a1", "b3", "b1", "b2", "b0", "a2", "a0"});
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    Polynomial f = random_poly(rng, u, 4, 5);
    EXPECT_EQ(Polynomial::parse(f.to_string(), u), f) << f.to_string();
  }
  EXPECT_EQ(P("-a1 + 1/2", u).to_string(), "-a1 + 1/2");
  EXPECT_EQ(P("0", u).to_string(), "0");
  EXPECT_EQ(P("(a1+a0)^2", u), P("a1^2 + 2*a1*a0 + a0^2", u));
}

TEST(TextFormat, Errors) {
  auto u = xy();
  EXPECT_THROW(P("1.5*x", u), ParseError);
  EXPECT_THROW(P("x + z", u), ParseError);
  EXPECT_THROW(P("x / y", u), ParseError);
  EXPECT_THROW(P("x +", u), ParseError);
  try {
    P("x + 2*q", u);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column, 7u);
  }
}
