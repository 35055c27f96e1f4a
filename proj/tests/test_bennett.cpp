#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kinalg/bennett.hpp"

using namespace kinalg;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

const BennettParameters named{R(7, 4), R(5, 6), R(1, 3)};

std::vector<BennettParameters> random_parameters(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  std::vector<BennettParameters> out;
  while (out.size() < n) {
    BennettParameters m{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                        Rational(num(rng), den(rng))};
    if (m.admissible() && !bennett_q(m).q5.is_zero()) out.push_back(m);
  }
  return out;
}

std::vector<BennettParameters> samples() {
  auto v = random_parameters(5, 11);
  v.insert(v.begin(), named);
  return v;
}

const AnalysisReport& report_for(const BennettParameters& m) {
  static std::map<std::string, AnalysisReport> cache;
  auto key = m.to_string();
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto [s, init] = bennett_preset(m);
    it = cache.emplace(key, analyze(s, init)).first;
  }
  return it->second;
}

IdealPresentation embed_all(const IdealPresentation& I, const Universe& u) {
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : I.generators) out.add(g.embed(u));
  return out;
}

}  // namespace

TEST(BennettParameters, Admissibility) {
  EXPECT_TRUE(named.admissible());
  EXPECT_TRUE(named.in_injective_region());
  for (auto m : {BennettParameters{0, 1, R(1, 2)}, BennettParameters{1, 0, R(1, 2)},
                 BennettParameters{1, 1, 0}, BennettParameters{1, 1, 1},
                 BennettParameters{1, 1, -1}}) {
    EXPECT_FALSE(m.admissible());
    EXPECT_THROW(bennett_geometry(m), InvalidArgument);
  }
  try {
    bennett_geometry({1, 1, 0});
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("m2 = 0"), std::string::npos);
  }
}

TEST(BennettGeometry, NamedParameters) {
  auto g = bennett_geometry(named);
  // r = (m0^2 + 1)(1 - m2^2) / (m0^2 (m2 - 1)^2 + (m2 + 1)^2)
  const Rational m0 = named.m0, m2 = named.m2;
  Rational r = (m0 * m0 + 1) * (1 - m2 * m2) / (m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1));
  EXPECT_EQ(r, R(130, 113));
  EXPECT_EQ(g.r, r);
  EXPECT_EQ(norm2(g.p[2] - g.p[1]), r * r);
}

TEST(BennettGeometry, UnitAxesAndOrthogonality) {
  for (auto& m : samples()) {
    auto g = bennett_geometry(m);
    for (int l = 0; l < 4; ++l) {
      EXPECT_TRUE(norm2(g.chi[l]).is_one()) << m.to_string() << " l=" << l;
      Vector3 v = g.p[(l + 1) % 4] - g.p[l];
      Vector3 w = g.p[l] - g.p[(l + 3) % 4];
      EXPECT_TRUE(dot(g.chi[l], v).is_zero());
      EXPECT_TRUE(dot(g.chi[l], w).is_zero());
      EXPECT_TRUE(norm2(g.eta[l]).is_one());
      EXPECT_TRUE(dot(g.eta[l], g.xi[l]).is_zero());
      EXPECT_EQ(cross(g.eta[l], g.xi[l]), g.chi[l]);
    }
  }
}

TEST(BennettGeometry, SignFlippedAxisFormsFail) {
  const Rational m0 = named.m0, m1 = named.m1, m2 = named.m2;
  const Rational a = m0 * m0 + 1, b = m1 * m1 + 1, s = m1 * m1 + m2 * m2;
  const Rational q = m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1);
  auto g = bennett_geometry(named);
  Vector3 chi2 = g.chi[2];
  chi2[1] = 4 * m0 * ((m0 * m0 - 1) * s + m2 * a * b) / (a * b * q);
  EXPECT_FALSE(norm2(chi2).is_one());
  Vector3 chi3 = g.chi[3];
  chi3[1] = 2 * m0 * (m1 * m1 - m2 * m2) * (1 - m2 * m2) / (s * q);
  EXPECT_FALSE(dot(chi3, g.p[0] - g.p[3]).is_zero());
  EXPECT_TRUE(norm2(g.chi[2]).is_one());
  EXPECT_TRUE(dot(g.chi[3], g.p[0] - g.p[3]).is_zero());
}

TEST(BennettConditions, NamedValues) {
  auto g = bennett_geometry(named);
  auto c = bennett_conditions_check(g.p, g.chi);
  EXPECT_TRUE(c.cond1);
  EXPECT_TRUE(c.cond2);
  EXPECT_TRUE(c.cond3_squared);
  EXPECT_TRUE(c.orthogonal_axes);
  EXPECT_FALSE(c.planar);
  const Rational m0 = named.m0;
  EXPECT_EQ(c.cos_phi0, (m0 * m0 - 1) / (m0 * m0 + 1));
  EXPECT_EQ(c.cos_phi0, R(33, 65));
  EXPECT_EQ(c.cos_phi1, R(-15, 113));
  // sin phi1 = 112/113, |r| sin phi0 = (130/113)(56/65)
  EXPECT_EQ(1 - c.cos_phi1 * c.cos_phi1, R(112, 113) * R(112, 113));
  EXPECT_EQ(1 - c.cos_phi0 * c.cos_phi0, R(56, 65) * R(56, 65));
  EXPECT_EQ(R(130, 113) * R(56, 65), R(112, 113));
  EXPECT_EQ(c.side0_squared, 1);
  EXPECT_EQ(c.side1_squared, R(130, 113) * R(130, 113));
}

TEST(BennettConditions, AngleIdentityOnSamples) {
  for (auto& m : samples()) {
    auto g = bennett_geometry(m);
    auto c = bennett_conditions_check(g.p, g.chi);
    EXPECT_TRUE(c.cond1 && c.cond2 && c.cond3_squared && c.orthogonal_axes) << m.to_string();
    // |v0| = 1, so sin phi1 = |v1| sin phi0
    Rational sin1_sq = (1 - c.cos_phi0 * c.cos_phi0) * c.side1_squared;
    EXPECT_EQ(c.cos_phi1 * c.cos_phi1 + sin1_sq, 1);
  }
}

TEST(BennettConditions, PlanarRectangle) {
  std::array<Vector3, 4> p{Vector3{0, 0, 0}, Vector3{2, 0, 0}, Vector3{2, 1, 0}, Vector3{0, 1, 0}};
  std::array<Vector3, 4> chi{e3(), e3(), e3(), e3()};
  auto c = bennett_conditions_check(p, chi);
  EXPECT_TRUE(c.cond1);
  EXPECT_TRUE(c.cond2);
  EXPECT_TRUE(c.cond3_squared);
  EXPECT_TRUE(c.planar);
}

TEST(BennettShape, KleinSymmetry) {
  for (auto& m : random_parameters(5, 3)) {
    auto g1 = bennett_g1(m), g2 = bennett_g2(m);
    EXPECT_EQ(bennett_f(m), bennett_f(g1));
    EXPECT_EQ(bennett_f(m), bennett_f(g2));
    EXPECT_EQ(bennett_g1(g1), m);
    EXPECT_EQ(bennett_g2(g2), m);
    EXPECT_EQ(bennett_g1(g2), bennett_g2(g1));
    EXPECT_EQ(bennett_g1(bennett_g2(bennett_g1(g2))), m);
  }
}

TEST(BennettShape, MatchesGeometry) {
  for (auto& m : samples()) {
    auto g = bennett_geometry(m);
    auto f = bennett_f(m);
    EXPECT_EQ(f[0], g.p[2][0]);
    EXPECT_EQ(f[1], g.p[2][1]);
    EXPECT_EQ(f[2], g.p[2][2]);
    EXPECT_EQ(f[3], g.p[3][0]);
    EXPECT_EQ(f[4], g.p[3][1]);
    EXPECT_EQ(norm2(g.p[3] - g.p[2]), 1);
  }
}

TEST(BennettShape, SignFlippedP3FailsTheSideLength) {
  const Rational m0 = named.m0, m1 = named.m1, m2 = named.m2;
  const Rational q = m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1);
  auto g = bennett_geometry(named);
  Vector3 p3 = g.p[3];
  p3[1] = (m0 * m0 + 1) * (m2 * m2 - 1) / (q * (m1 * m1 + m2 * m2)) * (2 * m1 * m2);
  EXPECT_NE(p3[1], g.p[3][1]);
  EXPECT_NE(norm2(p3 - g.p[2]), 1);
}

TEST(BennettInitial, ExactOnSamples) {
  for (auto& m : samples()) {
    auto init = bennett_initial(m);
    auto rep = bennett_initial_check(m, init);
    EXPECT_TRUE(rep.ok()) << m.to_string();
  }
  auto init = bennett_initial(named);
  const Rational m1 = named.m1, m2 = named.m2, s = m1 * m1 + m2 * m2;
  EXPECT_EQ(s, R(29, 36));
  EXPECT_EQ(init.at("c"), (EulerQuadruple{-m1 * m2 / s, -m2 * m2 / s, m1 * m2 / s, m1 * m1 / s}));
}

TEST(BennettT, NamedAndErrors) {
  auto t = bennett_t_coefficients(named);
  const Rational m0 = named.m0, m1 = named.m1, m2 = named.m2;
  const Rational q = m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1);
  const Rational q4 = m0 * m0 * (m2 - 1) + m2 + 1;
  const Rational q0 = q4 * (m1 * m1 + m2) - 2 * m0 * (m2 - 1) * m1;
  EXPECT_EQ(t[0], (m2 * m2 - 1) * q0 / (m1 * m2 * q));
  EXPECT_THROW(bennett_t_coefficients({R(2), R(4, 3), R(1, 3)}), InvalidArgument);
}

TEST(BennettPipeline, DimensionEssentialsRegularity) {
  for (auto& m : samples()) {
    const auto& rep = report_for(m);
    EXPECT_EQ(rep.dimension, 1) << m.to_string();
    EXPECT_EQ(std::set<std::string>(rep.essential.begin(), rep.essential.end()),
              (std::set<std::string>{"a0", "a2", "c0", "c2"}));
    EXPECT_TRUE(rep.regularity.is_regular);
    EXPECT_EQ(rep.regularity.codim, 3);
    EXPECT_TRUE(rep.complete_intersection);
  }
}

TEST(BennettPipeline, FixedBodyComponentsMatchClosedForms) {
  for (auto& m : samples()) {
    const auto& rep = report_for(m);
    const auto& ja = rep.joints[1];
    const auto& jc = rep.joints[0];
    ASSERT_EQ(ja.next, "a");
    ASSERT_EQ(jc.prev, "c");
    auto A = bennett_component_a(m), C = bennett_component_c(m);
    EXPECT_TRUE(ideals_equal(embed_all(ja.component, A.universe), A)) << m.to_string();
    EXPECT_TRUE(ideals_equal(embed_all(jc.component, C.universe), C)) << m.to_string();
  }
}

TEST(BennettPipeline, VarietyIdealIsTheEliminationIdeal) {
  for (auto& m : samples()) {
    const auto& rep = report_for(m);
    const auto& E = rep.elimination;
    auto V = bennett_variety_ideal(m, E.universe());
    for (auto& g : V.generators) EXPECT_TRUE(E.contains(g)) << g;
    EXPECT_EQ(buchberger(V, E.order()), E) << m.to_string();
  }
}

TEST(BennettPipeline, LiftSigns) {
  for (auto& m : samples()) {
    const auto& rep = report_for(m);
    const Universe& U = rep.universe;
    auto own = buchberger(rep.final_ideal, MonomialOrder::degrevlex(U->size()));
    auto flipped = buchberger(reflect_body(rep.final_ideal, "b"), MonomialOrder::degrevlex(U->size()));
    auto t = bennett_t_coefficients(m);
    auto v = [&](const char* n) { return Polynomial::variable(U, n); };
    // the initial b has b0 = -t0 a0 c0
    EXPECT_TRUE(own.contains(v("b0") + v("a0") * v("c0") * t[0]));
    EXPECT_TRUE(own.contains(v("b0") * v("b0") - v("a0") * v("a0") * v("c0") * v("c0") * (t[0] * t[0])));
    for (auto& l : bennett_lift_relations(m, U)) {
      EXPECT_TRUE(flipped.contains(Polynomial::variable(U, l.variable) - l.value))
          << m.to_string() << " " << l.variable;
      bool is_b = l.variable[0] == 'b';
      EXPECT_EQ(own.contains(Polynomial::variable(U, l.variable) - l.value), !is_b) << l.variable;
    }
  }
}

TEST(BennettLift, InitialPointUpToTheSignOfB) {
  for (auto& m : samples()) {
    auto init = bennett_initial(m);
    auto pt = init.point();
    auto x = bennett_lift(BennettPoint<Rational>{pt.at("a0"), pt.at("a2"), pt.at("c0"), pt.at("c2")}, m);
    for (auto& [k, v] : pt) EXPECT_EQ(x.at(k), k[0] == 'b' ? -v : v) << k;
    auto back = bennett_project(x);
    EXPECT_EQ(back.a0, pt.at("a0"));
    EXPECT_EQ(back.c2, pt.at("c2"));
  }
}

TEST(BennettParametrize, InitialAngle) {
  for (auto& m : samples()) {
    auto init = bennett_initial(m).point();
    const Rational b = m.m1 * m.m1 + 1;
    // cos t = m1 / sqrt(m1^2+1), sin t = -1 / sqrt(m1^2+1); the point is exact
    // whenever the square root it needs is rational
    try {
      auto p = bennett_point<Rational>(m.m1 / b, -b.inverse(), m, 1);
      EXPECT_EQ(p.a0, init.at("a0"));
      EXPECT_EQ(p.a2, init.at("a2"));
      EXPECT_EQ(p.c0, init.at("c0"));
      EXPECT_EQ(p.c2, init.at("c2"));
    } catch (const InvalidArgument&) {
      ADD_FAILURE() << "no rational root at " << m.to_string();
    }
  }
}

TEST(BennettParametrize, SamplesSatisfyTheConstraints) {
  const double pi = std::numbers::pi;
  for (auto& m : samples()) {
    auto [s, init] = bennett_preset(m);
    auto I = assemble_constraints(s, init);
    auto V = bennett_variety_ideal(m, I.universe);
    double worst = 0;
    for (int branch : {1, -1})
      for (int i = 0; i < 200; ++i) {
        double t = 2 * pi * i / 200;
        auto p = bennett_parametrize(t, m, branch);
        auto x = bennett_lift(p, m);
        worst = std::max({worst, residual_sample(I, x), residual_sample(V, x)});
        auto back = bennett_project(x);
        EXPECT_EQ(back.a2, p.a2);
        auto q = bennett_parametrize(t + pi, m, branch);
        EXPECT_NEAR(q.a0, -p.a0, 1e-12);
        EXPECT_NEAR(q.c2, -p.c2, 1e-12);
      }
    EXPECT_LT(worst, 1e-9) << m.to_string();
  }
}

TEST(BennettQ5Zero, SystemAtTwo) {
  auto S = bennett_q5zero_system(R(2), R(1, 3));
  EXPECT_EQ(S.m.m1, R(4, 3));
  EXPECT_TRUE(bennett_q(S.m).q5.is_zero());
  const auto& e = S.generators.universe;
  EXPECT_EQ(S.generators.generators[0], Polynomial::parse("25/9*a0^2 + a3^2 - 1", e));
  bool a2_zero = false;
  for (auto& l : S.lift) a2_zero = a2_zero || (l.variable == "a2" && l.value.is_zero());
  EXPECT_TRUE(a2_zero);
  EXPECT_THROW(bennett_q5zero_system(R(1), R(1, 3)), InvalidArgument);
  EXPECT_THROW(bennett_q5zero_system(R(2), R(1)), InvalidArgument);
}

TEST(BennettQ5Zero, PipelineAgrees) {
  for (auto m2 : {R(1, 3), R(-2, 7)}) {
    auto S = bennett_q5zero_system(R(2), m2);
    const auto& rep = report_for(S.m);
    EXPECT_EQ(rep.dimension, 1);
    EXPECT_EQ(std::set<std::string>(rep.essential.begin(), rep.essential.end()),
              (std::set<std::string>{"a0", "a3", "c0", "c2"}));
    const auto& E = rep.elimination;
    auto G = embed_all(S.generators, E.universe());
    EXPECT_EQ(buchberger(G, E.order()), E);
    const Universe& U = rep.universe;
    auto flipped = buchberger(reflect_body(rep.final_ideal, "b"), MonomialOrder::degrevlex(U->size()));
    for (auto& l : S.lift)
      EXPECT_TRUE(flipped.contains(Polynomial::variable(U, l.variable) - l.value.embed(U))) << l.variable;
    EXPECT_TRUE(rep.regularity.is_regular);
    EXPECT_EQ(rep.regularity.codim, 3);
  }
}

TEST(BennettQ5Zero, AlternativeConstantIsNotInTheIdeal) {
  const Rational m0 = 2, m2 = R(1, 3);
  auto S = bennett_q5zero_system(m0, m2);
  const auto& E = report_for(S.m).elimination;
  auto u = E.universe();
  auto v = [&](const char* n) { return Polynomial::variable(u, n); };
  const Rational d = m0 * m0 - 1;
  auto lhs = v("c0") * v("c0") * (m2 * m2) + v("c2") * v("c2") * (4 * m0 * m0 / (d * d));
  Rational alternative = 4 * m0 * m0 * m2 * m2 / ((m2 * m2 - 1) * (m2 * m2 - 1) * m2 * m2 + 4 * m0 * m0);
  Rational corrected = 4 * m0 * m0 * m2 * m2 / (4 * m0 * m0 + m2 * m2 * d * d);
  EXPECT_FALSE(E.contains(lhs - Polynomial(u, alternative)));
  EXPECT_TRUE(E.contains(lhs - Polynomial(u, corrected)));
}

TEST(BennettQ5Zero, ParametrizationResiduals) {
  const double pi = std::numbers::pi;
  auto S = bennett_q5zero_system(R(2), R(1, 3));
  auto [s, init] = bennett_preset(S.m);
  auto I = assemble_constraints(s, init);
  double worst = 0;
  for (int branch : {1, -1})
    for (int i = 0; i < 200; ++i) {
      auto e = bennett_q5zero_parametrize(2 * pi * i / 200, S, branch);
      std::map<std::string, double> x{{"a0", e[0]}, {"a3", e[1]}, {"c0", e[2]}, {"c2", e[3]}};
      worst = std::max(worst, residual_sample(S.generators, x));
      for (auto& l : S.lift) x[l.variable] = l.value.evaluate(x);
      worst = std::max(worst, residual_sample(I, x));
    }
  EXPECT_LT(worst, 1e-9);
}
