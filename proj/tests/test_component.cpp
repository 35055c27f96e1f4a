#include <gtest/gtest.h>

#include "kinalg/component.hpp"

using namespace kinalg;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

GroebnerBasis basis(const Universe& u, std::vector<std::string> gens) {
  return buchberger(IdealPresentation(u, gens), MonomialOrder::degrevlex(u->size()));
}

}  // namespace

TEST(KeptRelations, CircleUnderAGraph) {
  auto u = make_universe({"z", "x", "y"});
  auto G = basis(u, {"x^2 + y^2 - 1", "z - x"});
  EXPECT_TRUE(kept_relations(G, {"x", "y"}, 1).empty());
  auto rels = kept_relations(G, {"x", "y"}, 2);
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_TRUE(G.contains(rels[0]));
  EXPECT_EQ(rels[0] * rels[0].leading_coefficient(G.order()).inverse(),
            Polynomial::parse("x^2 + y^2 - 1", u));
}

TEST(RelationOver, NeedsEnoughDegree) {
  auto u = make_universe({"z", "x", "y"});
  auto G = basis(u, {"x - y^2", "z - x*y"});
  auto z = Polynomial::variable(u, "z");
  EXPECT_FALSE(relation_over(G, z, {"y"}, 2));
  auto r = relation_over(G, z, {"y"}, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Polynomial::parse("y^3", u));
  EXPECT_TRUE(G.contains(z - *r));
}

TEST(LiftStructure, GraphOverACircle) {
  auto u = make_universe({"w", "z", "x", "y"});
  auto G = basis(u, {"x^2 + y^2 - 1", "z - x*y", "w - x + y^2"});
  std::map<std::string, Rational> p{{"x", R(3, 5)}, {"y", R(4, 5)}, {"z", R(12, 25)},
                                    {"w", R(3, 5) - R(16, 25)}};
  auto L = lift_structure(G, {"x", "y"}, p);
  ASSERT_TRUE(L);
  EXPECT_EQ(L->value.at("z").evaluate(p), R(12, 25));
  EXPECT_EQ(L->elimination.size(), 1u);
  EXPECT_TRUE(certify_lift(G.presentation(), *L, p));
  auto off = p;
  off["z"] = 0;
  EXPECT_FALSE(certify_lift(G.presentation(), *L, off));
}

TEST(LiftStructure, TwoSheetsHaveNoGlobalLift) {
  auto u = make_universe({"z", "x", "y"});
  IdealPresentation I(u, std::vector<std::string>{"(z - x)*(z + x)", "x^2 + y^2 - 1"});
  auto G = buchberger(I, MonomialOrder::degrevlex(3));
  std::map<std::string, Rational> p{{"x", R(3, 5)}, {"y", R(4, 5)}, {"z", R(3, 5)}};
  EXPECT_FALSE(lift_structure(G, {"x", "y"}, p));

  // the branch through p picks the sheet z = x
  auto B = branch_lift_structure(I, {"x", "y"}, p);
  ASSERT_TRUE(B);
  EXPECT_EQ(B->value.at("z"), Polynomial::parse("x", B->keep_universe));
  auto q = p;
  q["z"] = R(-3, 5);
  auto C = branch_lift_structure(I, {"x", "y"}, q);
  ASSERT_TRUE(C);
  EXPECT_EQ(C->value.at("z"), Polynomial::parse("-x", C->keep_universe));
}
