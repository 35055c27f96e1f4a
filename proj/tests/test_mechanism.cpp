#include <gtest/gtest.h>

#include <random>

#include "kinalg/bennett.hpp"
#include "kinalg/bricard.hpp"

using namespace kinalg;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

// fixed body f and one moving body a joined at the origin
MechanismSpec single_joint(const Vector3& axis, std::optional<std::pair<Vector3, Vector3>> plane) {
  MechanismSpec s;
  s.name = "single";
  s.closed = false;
  s.bodies = {{"f", true}, {"a"}};
  s.joints = {{0, 1, Vector3{0, 0, 0}, axis, plane}};
  return s;
}

// three bodies on a right triangle, all axes vertical: rigid
std::pair<MechanismSpec, InitialConfiguration> triangle() {
  MechanismSpec s;
  s.name = "triangle";
  s.bodies = {{"f", true}, {"a"}, {"b"}};
  const std::array<Vector3, 3> p{Vector3{0, 0, 0}, Vector3{1, 0, 0}, Vector3{0, 1, 0}};
  for (std::size_t l = 0; l < 3; ++l) s.joints.push_back({(l + 2) % 3, l, p[l], e3(), std::nullopt});
  InitialConfiguration init;
  init.quads = {{"a", {1, 0, 0, 0}}, {"b", {1, 0, 0, 0}}};
  return {s, init};
}

const AnalysisReport& bricard_report() {
  static AnalysisReport rep = [] {
    auto [s, init] = bricard_preset();
    return analyze(s, init);
  }();
  return rep;
}

}  // namespace

TEST(Assemble, Counts) {
  auto [bs, bi] = bricard_preset();
  auto I = assemble_constraints(bs, bi);
  EXPECT_EQ(I.size(), 20u);
  EXPECT_EQ(I.universe->size(), 20u);

  auto [ns, ni] = bennett_preset({R(7, 4), R(5, 6), R(1, 3)});
  auto J = assemble_constraints(ns, ni);
  EXPECT_EQ(J.size(), 14u);
  EXPECT_EQ(J.universe->size(), 12u);
}

TEST(Assemble, SingleJointIdentity) {
  auto s = single_joint(e3(), std::nullopt);
  InitialConfiguration init;
  init.quads = {{"a", {1, 0, 0, 0}}};
  auto I = assemble_constraints(s, init);
  ASSERT_EQ(I.size(), 3u);
  // a rotation about e3 keeps e3 fixed: <R(a)e1, e3> = <R(a)e2, e3> = 0
  IdealPresentation want(I.universe, std::vector<std::string>{
                                         "a0^2 + a1^2 + a2^2 + a3^2 - 1",
                                         "2*(a1*a3 - a0*a2)", "2*(a2*a3 + a0*a1)"});
  EXPECT_TRUE(ideals_equal(I, want));
}

TEST(Assemble, FirstCubeJointComponents) {
  // plane (e1, e3) on the fixed body, axis e2 on a
  auto s = single_joint(e2(), std::pair{e1(), e3()});
  InitialConfiguration init;
  init.quads = {{"a", {R(1, 2), R(1, 2), R(1, 2), R(-1, 2)}}};
  auto I = assemble_constraints(s, init);
  ASSERT_EQ(I.size(), 3u);
  IdealPresentation reference(I.universe, std::vector<std::string>{
                                            "a0^2 + a1^2 + a2^2 + a3^2 - 1", "a0*a2 + a1*a3",
                                            "-a0^2 + a1^2 + a2^2 - a3^2"});
  EXPECT_TRUE(ideals_equal(I, reference));
}

TEST(Assemble, LabelsAndInitialPoint) {
  auto [s, init] = bricard_preset();
  auto lc = labeled_constraints(s, init);
  EXPECT_EQ(lc.front().label, "normalization a");
  EXPECT_EQ(lc[5].label, "loop row 1");
  auto pt = init.point();
  for (auto& c : lc) EXPECT_TRUE(c.poly.evaluate(pt).is_zero()) << c.label;
}

TEST(Assemble, FramesFollowTheInitialPoint) {
  // another unit quadruple for a moves the local frames with it
  auto [s, init] = bricard_preset();
  init.quads["a"] = {R(1, 2), R(1, 2), R(-1, 2), R(-1, 2)};
  auto I = assemble_constraints(s, init);
  auto pt = init.point();
  for (auto& g : I.generators) EXPECT_TRUE(g.evaluate(pt).is_zero());
}

TEST(Assemble, NonUnitInitialQuadruple) {
  auto [s, init] = bricard_preset();
  init.quads["a"] = {1, 1, 0, 0};
  try {
    assemble_constraints(s, init);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("body a"), std::string::npos);
  }
}

TEST(Spec, Validation) {
  auto [s, init] = bricard_preset();
  auto bad = s;
  bad.bodies[1].fixed = true;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = s;
  bad.joints[2].axis = Vector3{1, 1, 0};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = s;
  bad.joints.pop_back();
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = s;
  bad.variable_order.pop_back();
  EXPECT_THROW(bad.validate(), InvalidArgument);
  EXPECT_NO_THROW(s.validate());
}

TEST(Analyze, BricardDimensionAndEssentials) {
  const auto& rep = bricard_report();
  EXPECT_EQ(rep.dimension, 1);
  EXPECT_TRUE(rep.essential_detected);
  EXPECT_EQ(std::set<std::string>(rep.essential.begin(), rep.essential.end()),
            (std::set<std::string>{"a0", "a2", "c2"}));
  EXPECT_EQ(rep.lift.size(), 17u);
  for (auto& j : rep.joints) EXPECT_FALSE(j.component.generators.empty());
}

TEST(Analyze, BricardMatchesGoldenFiles) {
  for (auto& g : bricard_golden_diff(bricard_report(), KINALG_GOLDEN_DIR)) {
    EXPECT_TRUE(g.diff.empty()) << g.file;
  }
}

TEST(Analyze, BricardVarietyAndRegularity) {
  const auto& rep = bricard_report();
  auto u = rep.elimination.universe();
  ASSERT_TRUE(u);
  EXPECT_EQ(rep.elimination, buchberger(bricard_variety_ideal(u), rep.elimination.order()));
  EXPECT_TRUE(rep.regularity.is_regular);
  EXPECT_EQ(rep.regularity.codim, 2);
  EXPECT_EQ(rep.elimination_generators.size(), 2u);
  EXPECT_TRUE(rep.complete_intersection);
}

TEST(Analyze, BricardFinalBasisVanishesAtInit) {
  const auto& rep = bricard_report();
  auto pt = rep.init.point();
  for (auto& g : rep.final_basis.elements()) EXPECT_TRUE(g.evaluate(pt).is_zero());
  for (auto& g : rep.original.generators) EXPECT_TRUE(rep.final_basis.contains(g));
}

TEST(Analyze, BricardSelectsFirstComponent) {
  const auto& rep = bricard_report();
  // joint f-a: the component through a_init carries a1 - a0 and a3 + a2
  const auto& j = rep.joints[1];
  EXPECT_EQ(j.prev, "f");
  EXPECT_EQ(j.next, "a");
  EXPECT_TRUE(j.touches_fixed);
  std::map<std::string, Polynomial> subs;
  for (auto& s : rep.substitutions) subs.emplace(s.variable, s.value);
  EXPECT_EQ(subs.at("a1"), Polynomial::parse("a0", rep.universe));
  EXPECT_EQ(subs.at("a3"), Polynomial::parse("-a2", rep.universe));
}

TEST(Analyze, BudgetExhaustion) {
  auto [s, init] = bricard_preset();
  AnalysisOptions opts;
  opts.gb.budget = 3;
  EXPECT_THROW(analyze(s, init, opts), BudgetExhausted);
}

TEST(Analyze, RigidLoopIsZeroDimensional) {
  auto [s, init] = triangle();
  auto rep = analyze(s, init);
  EXPECT_EQ(rep.dimension, 0);
  EXPECT_TRUE(rep.zero_dimensional);
  EXPECT_NE(std::find(rep.notes.begin(), rep.notes.end(), "zero-dimensional component"),
            rep.notes.end());
}

TEST(ResidualSample, Examples) {
  auto u = make_universe({"c2", "a2", "a0"});
  auto h = bricard_variety_ideal(u);
  // exact rational point: a0 = a2 = 1/2, c2 from h1 with c2^2 - c2 - 1/4 + 1/4 = 0
  std::map<std::string, double> p{{"a0", 0.5}, {"a2", 0.5}, {"c2", 1.0}};
  EXPECT_EQ(residual_sample(h, p), 0.0);
  p["a0"] += 1e-3;
  EXPECT_GT(residual_sample(h, p), 1e-4);
  std::map<std::string, double> partial{{"a0", 0.5}};
  EXPECT_THROW(residual_sample(h, partial), Error);
}

TEST(PolynomialSqrt, PerfectSquaresOnly) {
  auto u = make_universe({"x", "y"});
  auto o = MonomialOrder::degrevlex(2);
  auto f = Polynomial::parse("4*x^2 - 4*x*y + y^2", u);
  auto r = polynomial_sqrt(f, o);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r * *r, f);
  EXPECT_FALSE(polynomial_sqrt(Polynomial::parse("x^2 + y^2", u), o));
  EXPECT_FALSE(polynomial_sqrt(Polynomial::parse("2*x^2", u), o));
}
