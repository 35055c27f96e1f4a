// Runs the twelve acceptance criteria and prints one line per criterion.
// Exit status 0 when all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "kinalg/kinalg.hpp"

using namespace kinalg;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

const double pi = std::numbers::pi;
const BennettParameters named{R(7, 4), R(5, 6), R(1, 3)};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[" << what << "] ";
    }
  }
};

std::vector<BennettParameters> sampled_parameters() {
  std::vector<BennettParameters> out{named};
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  while (out.size() < 6) {
    BennettParameters m{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                        Rational(num(rng), den(rng))};
    if (m.admissible() && !bennett_q(m).q5.is_zero()) out.push_back(m);
  }
  return out;
}

IdealPresentation embed_all(const IdealPresentation& I, const Universe& u) {
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : I.generators) out.add(g.embed(u));
  return out;
}

Polynomial monic(const Polynomial& p, const MonomialOrder& o) {
  return p * p.leading_coefficient(o).inverse();
}

const AnalysisReport& bricard_report() {
  static AnalysisReport rep = [] {
    auto [s, init] = bricard_preset();
    return analyze(s, init);
  }();
  return rep;
}

std::map<std::string, AnalysisReport>& bennett_cache() {
  static std::map<std::string, AnalysisReport> cache;
  return cache;
}

const AnalysisReport& bennett_report(const BennettParameters& m) {
  auto& cache = bennett_cache();
  auto it = cache.find(m.to_string());
  if (it == cache.end()) {
    auto [s, init] = bennett_preset(m);
    it = cache.emplace(m.to_string(), analyze(s, init)).first;
  }
  return it->second;
}

void criterion1(Outcome& o) {
  for (auto& c : verify_canonical_decomposition()) o.require(c.pass, c.name);
  o.detail << "membership, disjointness and intersection checked";
}

void criterion2(Outcome& o) {
  auto d = decompose_joint({e1(), e3(), Vector3{0, 0, -1}}, quad_names("f"), quad_names("a"));
  auto [plus, minus] = specialize_fixed_body(d, {1, 0, 0, 0}, 'a');
  auto U = plus.universe;
  IdealPresentation Ia0(U, {"2*a2^2+2*a0^2-1", "a1+a0", "a3-a2"});
  IdealPresentation Ia1(U, {"2*a2^2+2*a0^2-1", "a1-a0", "a3+a2"});
  bool straight = ideals_equal(plus, Ia1) && ideals_equal(minus, Ia0);
  bool swapped = ideals_equal(plus, Ia0) && ideals_equal(minus, Ia1);
  o.require(straight || swapped, "specialized components are I_a0 and I_a1");
  std::map<std::string, Rational> a_init{
      {"a0", R(1, 2)}, {"a1", R(1, 2)}, {"a2", R(1, 2)}, {"a3", R(-1, 2)}};
  auto sel = select_component(plus, minus, a_init);
  o.require(ideals_equal(sel.ideal, Ia1), "a_init selects I_a1");
  o.detail << "selected " << to_string(sel.side) << " component";
}

void criterion3(Outcome& o) {
  auto I = bricard_first_ideal();
  auto g = read_ideal_file(std::string(KINALG_GOLDEN_DIR) + "/bricard_g.ideal");
  auto G = buchberger(I, *g.order);
  std::size_t found = 0;
  for (auto& p : g.ideal.generators) {
    auto q = monic(p.embed(I.universe), G.order());
    bool hit = std::find(G.elements().begin(), G.elements().end(), q) != G.elements().end();
    found += hit;
  }
  o.require(found == g.ideal.size() && G.size() == g.ideal.size(), "all reference elements");
  o.detail << found << "/" << g.ideal.size() << " reference elements, basis size " << G.size();
}

void criterion4(Outcome& o) {
  const auto& rep = bricard_report();
  auto h = read_ideal_file(std::string(KINALG_GOLDEN_DIR) + "/bricard_h.ideal").ideal;
  auto H = embed_all(h, rep.universe);
  std::size_t in = 0, out = 0;
  for (auto& p : H.generators) in += rep.final_basis.contains(p);
  auto GH = buchberger(H, rep.final_basis.order());
  for (auto& p : rep.final_ideal.generators) out += GH.contains(p);
  o.require(in == H.size() && out == rep.final_ideal.size(), "mutual membership");

  auto v = read_ideal_file(std::string(KINALG_GOLDEN_DIR) + "/bricard_variety.ideal").ideal;
  const auto& E = rep.elimination;
  bool elim = E.universe() && E == buchberger(embed_all(v, E.universe()), E.order());
  o.require(elim, "elimination is <h0, h1>");
  o.require(rep.dimension == 1, "dimension 1");
  o.require(rep.regularity.is_regular && rep.regularity.codim == 2, "regular, codim 2");
  o.require(rep.elimination_generators.size() == 2 && rep.complete_intersection,
            "complete intersection");
  o.detail << in << "/" << H.size() << " h in pipeline, " << out << "/" << rep.final_ideal.size()
           << " pipeline generators in <h>, dimension " << rep.dimension << ", codim "
           << rep.regularity.codim;
}

void criterion5(Outcome& o) {
  auto [s, init] = bricard_preset();
  auto original = assemble_constraints(s, init);
  auto h = read_ideal_file(std::string(KINALG_GOLDEN_DIR) + "/bricard_h.ideal").ideal;
  double worst = 0;
  for (int comp = 0; comp < 2; ++comp) {
    double lo = comp == 0 ? -pi / 3 : 2 * pi / 3;
    for (int i = 0; i < 1000; ++i) {
      auto [p, m] = bricard_parametrize(lo + (2 * pi / 3) * i / 999.0);
      for (auto& e : {p, m}) {
        auto x = bricard_lift(e);
        worst = std::max({worst, residual_sample(h, x), residual_sample(original, x)});
      }
    }
  }
  o.require(worst < 1e-9, "residual");
  // rational points (a0, a2, c2) on the variety: a0 = a2 = 1/2, c2 in {0, 1}
  std::size_t exact = 0;
  for (auto c2 : {R(0), R(1)}) {
    auto x = bricard_lift(BricardPoint<Rational>{R(1, 2), R(1, 2), c2});
    bool on = std::all_of(h.generators.begin(), h.generators.end(),
                          [&](const Polynomial& g) { return g.evaluate(x).is_zero(); });
    exact += on && bricard_lift(bricard_project(x)) == x;
  }
  auto pt = init.point();
  exact += bricard_lift(bricard_project(pt)) == pt;
  o.require(exact == 3, "lift after project");
  o.detail << "max residual " << format_double(worst) << " over 4000 points, " << exact
           << "/3 rational points exact";
}

void criterion6(Outcome& o) {
  for (auto& m : sampled_parameters()) {
    const Rational m0 = m.m0, m2 = m.m2;
    auto g = bennett_geometry(m);
    Rational r = (m0 * m0 + 1) * (1 - m2 * m2) / (m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1));
    o.require(g.r == r, "r at " + m.to_string());
    for (int l = 0; l < 4; ++l) o.require(norm2(g.chi[l]).is_one(), "unit axis at " + m.to_string());
    auto c = bennett_conditions_check(g.p, g.chi);
    o.require(c.orthogonal_axes, "orthogonality at " + m.to_string());
    o.require(c.cond1 && c.cond2 && c.cond3_squared, "shape conditions at " + m.to_string());
  }
  auto g = bennett_geometry(named);
  auto c = bennett_conditions_check(g.p, g.chi);
  const Rational sin1 = R(112, 113);
  o.require(g.r == R(130, 113), "r = 130/113");
  o.require(c.cos_phi0 == R(33, 65) && c.cos_phi1 == R(-15, 113), "named cosines");
  o.require(c.cos_phi1 * c.cos_phi1 + sin1 * sin1 == 1, "cos^2 + sin^2");
  // third condition squared: r sin phi0 = sin phi1
  o.require(c.side1_squared * (1 - c.cos_phi0 * c.cos_phi0) == sin1 * sin1, "third condition");
  o.detail << "r = " << g.r << ", cos phi0 = " << c.cos_phi0 << ", cos phi1 = " << c.cos_phi1
           << ", 6 parameter points";
}

void criterion7(Outcome& o) {
  auto ms = sampled_parameters();
  ms.erase(ms.begin());
  for (auto& m : ms) {
    auto f = bennett_f(m);
    o.require(f == bennett_f(bennett_g1(m)) && f == bennett_f(bennett_g2(m)),
              "f invariance at " + m.to_string());
    auto g1 = [](const BennettParameters& x) { return bennett_g1(x); };
    auto g2 = [](const BennettParameters& x) { return bennett_g2(x); };
    auto g3 = [&](const BennettParameters& x) { return g1(g2(x)); };
    std::array<std::function<BennettParameters(const BennettParameters&)>, 4> G{
        [](const BennettParameters& x) { return x; }, g1, g2, g3};
    // Klein table: index xor
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) o.require(G[i](G[j](m)) == G[i ^ j](m), "Klein table");
  }
  o.detail << "5 parameter points, 16 compositions each";
}

void criterion8(Outcome& o) {
  for (auto& m : sampled_parameters()) {
    auto rep = bennett_initial_check(m, bennett_initial(m));
    if (!rep.ok()) {
      std::ostringstream os;
      os << "initial configuration at " << m.to_string() << ":";
      for (int k = 0; k < 3; ++k)
        os << " frame " << k << " (" << rep.frame_residual[k][0] << ", " << rep.frame_residual[k][1]
           << ", " << rep.frame_residual[k][2] << ") norm " << rep.norm_residual[k];
      o.require(false, os.str());
    }
  }
  o.detail << "unit norms and frame equations at 6 parameter points";
}

void criterion9(Outcome& o) {
  for (auto& m : sampled_parameters()) {
    const std::string at = " at " + m.to_string();
    const auto& rep = bennett_report(m);
    auto A = bennett_component_a(m), C = bennett_component_c(m);
    o.require(ideals_equal(embed_all(rep.joints[1].component, A.universe), A), "component a" + at);
    o.require(ideals_equal(embed_all(rep.joints[0].component, C.universe), C), "component c" + at);
    o.require(rep.dimension == 1, "dimension" + at);
    const auto& E = rep.elimination;
    auto V = bennett_variety_ideal(m, E.universe());
    for (auto& g : V.generators) o.require(E.contains(g), "variety generator" + at);

    // The reference b relations fix the sign of b opposite to the initial b;
    // they lie in the final ideal after b -> -b (the same rotations).
    const Universe& U = rep.universe;
    auto order = MonomialOrder::degrevlex(U->size());
    auto own = buchberger(rep.final_ideal, order);
    auto flipped = buchberger(reflect_body(rep.final_ideal, "b"), order);
    for (auto& l : bennett_lift_relations(m, U)) {
      auto rel = Polynomial::variable(U, l.variable) - l.value;
      o.require(flipped.contains(rel), "reference relation for " + l.variable + at);
      if (l.variable[0] == 'b') {
        auto own_rel = Polynomial::variable(U, l.variable) + l.value;
        o.require(own.contains(own_rel), "sign-matched relation for " + l.variable + at);
      }
    }
    o.require(rep.regularity.is_regular && rep.regularity.codim == 3, "regular, codim 3" + at);
  }
  o.detail << "6 parameter points; b relations hold for the sign class of -b_init";
}

void criterion10(Outcome& o) {
  double worst = 0;
  for (auto& m : sampled_parameters()) {
    auto [s, init] = bennett_preset(m);
    auto I = assemble_constraints(s, init);
    for (int branch : {1, -1})
      for (int i = 0; i < 1000; ++i) {
        auto x = bennett_lift(bennett_parametrize(2 * pi * i / 1000, m, branch), m);
        worst = std::max(worst, residual_sample(I, x));
      }
    auto pt = init.point();
    const Rational b = m.m1 * m.m1 + 1;
    try {
      auto p = bennett_point<Rational>(m.m1 / b, -b.inverse(), m, 1);
      o.require(p.a0 == pt.at("a0") && p.a2 == pt.at("a2") && p.c0 == pt.at("c0") &&
                    p.c2 == pt.at("c2"),
                "initial point at " + m.to_string());
    } catch (const InvalidArgument& e) {
      o.require(false, std::string("initial point at ") + m.to_string() + ": " + e.what());
    }
  }
  o.require(worst < 1e-9, "residual");
  o.detail << "max residual " << format_double(worst) << " over 2000 points at each of 6 parameter points";
}

void criterion11(Outcome& o) {
  auto S = bennett_q5zero_system(R(2), R(1, 3));
  o.require(S.m.m1 == R(4, 3), "m1 = 4/3");
  const auto& rep = bennett_report(S.m);
  const auto& E = rep.elimination;
  auto G = embed_all(S.generators, E.universe());
  for (auto& g : G.generators) o.require(E.contains(g), "generator membership");
  o.require(buchberger(G, E.order()) == E, "generators span the elimination ideal");
  o.require(rep.dimension == 1, "dimension 1");
  const Universe& U = rep.universe;
  auto flipped = buchberger(reflect_body(rep.final_ideal, "b"), MonomialOrder::degrevlex(U->size()));
  for (auto& l : S.lift)
    o.require(flipped.contains(Polynomial::variable(U, l.variable) - l.value.embed(U)),
              "lift relation for " + l.variable);

  auto [s, init] = bennett_preset(S.m);
  auto I = assemble_constraints(s, init);
  double worst = 0;
  for (int branch : {1, -1})
    for (int i = 0; i < 1000; ++i) {
      auto e = bennett_q5zero_parametrize(2 * pi * i / 1000, S, branch);
      std::map<std::string, double> x{{"a0", e[0]}, {"a3", e[1]}, {"c0", e[2]}, {"c2", e[3]}};
      worst = std::max(worst, residual_sample(S.generators, x));
      for (auto& l : S.lift) x[l.variable] = l.value.evaluate(x);
      worst = std::max(worst, residual_sample(I, x));
    }
  o.require(worst < 1e-9, "residual");
  o.detail << "m = " << S.m.to_string() << ", dimension " << rep.dimension << ", max residual "
           << format_double(worst);
}

void criterion12(Outcome& o) {
  for (auto& c : verify_euler_suite(500, 7)) o.require(c.pass, c.name);
  o.detail << "500 random instances";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "canonical decomposition", 60, criterion1},
      {2, "first cube joint", 5, criterion2},
      {3, "lex basis g0..g9", 60, criterion3},
      {4, "cube final system", 600, criterion4},
      {5, "cube parametrization", 30, criterion5},
      {6, "4R geometry", 10, criterion6},
      {7, "4R shape symmetry", 5, criterion7},
      {8, "4R initial configuration", 10, criterion8},
      {9, "4R pipeline", 600 * 6, criterion9},
      {10, "4R parametrization", 60 * 6, criterion10},
      {11, "q5 = 0 system", 600, criterion11},
      {12, "Euler parameter suite", 60, criterion12},
  };
  int failures = 0;
  for (auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.require(false, "time limit exceeded");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << " "
              << c.name << " (" << std::fixed << std::setprecision(2) << secs << " s): "
              << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
