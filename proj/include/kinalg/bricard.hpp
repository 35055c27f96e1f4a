#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "kinalg/mechanism.hpp"

namespace kinalg {

/// The 6R loop on the unit cube: bodies f (fixed), a, b, c, d, e.
inline std::pair<MechanismSpec, InitialConfiguration> bricard_preset() {
  MechanismSpec s;
  s.name = "bricard";
  s.family = "bricard";
  s.bodies = {{"f", true}, {"a"}, {"b"}, {"c"}, {"d"}, {"e"}};
  const std::array<Vector3, 6> p{Vector3{0, 0, 1}, Vector3{1, 0, 1}, Vector3{1, 0, 0},
                                 Vector3{1, 1, 0}, Vector3{0, 1, 0}, Vector3{0, 1, 1}};
  const std::array<Vector3, 6> chi{e3(), e2(), e1(), e3(), e2(), e1()};
  const std::array<std::pair<Vector3, Vector3>, 6> plane{
      std::pair{e1(), e2()}, std::pair{e1(), e3()}, std::pair{e2(), e3()},
      std::pair{e1(), e2()}, std::pair{e1(), e3()}, std::pair{e2(), e3()}};
  for (std::size_t l = 0; l < 6; ++l)
    s.joints.push_back({(l + 5) % 6, l, p[l], chi[l], plane[l]});
  s.variable_order = {"e3", "e1", "e2", "e0", "d3", "d1", "d2", "d0", "b3", "b1",
                      "b2", "b0", "c3", "c1", "c0", "a3", "a1", "c2", "a2", "a0"};
  s.essential = {"c2", "a2", "a0"};
  const Rational h(1, 2);
  InitialConfiguration init;
  init.quads = {{"a", {h, h, h, -h}},
                {"b", {h, h, h, h}},
                {"c", {0, 0, 0, 1}},
                {"d", {h, h, -h, h}},
                {"e", {h, h, -h, -h}}};
  return {s, init};
}

/// Essential coordinates of a configuration.
template <class T>
struct BricardPoint {
  T a0;
  T a2;
  T c2;
};

/// All twenty parameters from (a0, a2, c2); needs a0 != 0.
template <class T>
std::map<std::string, T> bricard_lift(const BricardPoint<T>& p) {
  if (p.a0 == T(0)) throw InvalidArgument("bricard lift needs a0 != 0");
  const T& a0 = p.a0;
  const T& a2 = p.a2;
  const T& c2 = p.c2;
  T half = T(1) / T(2);
  T inv4 = T(1) / (T(4) * a0);
  std::map<std::string, T> x;
  x["a0"] = a0;
  x["a1"] = a0;
  x["a2"] = a2;
  x["a3"] = -a2;
  x["b0"] = x["d1"] = half;
  x["b1"] = x["d0"] = T(2) * a2 * (a2 - c2);
  x["b2"] = x["d3"] = a2 / (T(2) * a0);
  x["b3"] = T(2) * a0 * (a2 - c2);
  x["d2"] = -x["b3"];
  x["c0"] = a0 - inv4;
  x["c1"] = -x["c0"];
  x["c2"] = c2;
  x["c3"] = T(2) * a2 - c2;
  x["e0"] = x["e1"] = inv4;
  x["e2"] = x["e3"] = c2 - a2;
  return x;
}

template <class T>
BricardPoint<T> bricard_project(const std::map<std::string, T>& x) {
  return {x.at("a0"), x.at("a2"), x.at("c2")};
}

/// Both branches over the angle t, plus and minus the square root.
inline std::pair<BricardPoint<double>, BricardPoint<double>> bricard_parametrize(double t) {
  double c = std::cos(t), s = std::sin(t);
  double disc = 4 * c * c - 1;
  if (disc < 0) {
    if (disc < -1e-12)
      throw InvalidArgument("t lies outside both components (4cos^2 t - 1 < 0)");
    disc = 0;
  }
  const double r2 = std::numbers::sqrt2;
  double a0 = c / r2, a2 = s / r2;
  double w = std::sqrt(disc) / (2 * r2 * c);
  return {{a0, a2, a2 + w}, {a0, a2, a2 - w}};
}

/// Generators h0, h1 of the variety in (a0, a2, c2).
inline IdealPresentation bricard_variety_ideal(const Universe& u) {
  return IdealPresentation(u, std::vector<std::string>{
                                  "2*a2^2 + 2*a0^2 - 1",
                                  "16*a0^2*(c2^2 - 2*c2*a2 - a0^2) + 1"});
}

/// The two joint components through the fixed body and body a, plus the
/// one between a and b, over (a3, a1, b3, b1, b2, b0, a2, a0).
inline IdealPresentation bricard_first_ideal(const GroebnerOptions& opts = {}) {
  auto [spec, init] = bricard_preset();
  Universe u = make_universe({"a3", "a1", "b3", "b1", "b2", "b0", "a2", "a0"});
  auto pt = init.point();
  IdealPresentation I(u, std::vector<Polynomial>{});
  auto j1 = decompose_joint(local_frame(spec, init, 1), spec.names(0), spec.names(1), true, opts);
  auto [p1, m1] = specialize_fixed_body(j1, EulerQuadruple{1, 0, 0, 0}, 'a');
  for (auto& g : select_component(p1, m1, pt).ideal.generators) I.add(g.embed(u));
  auto j2 = decompose_joint(local_frame(spec, init, 2), spec.names(1), spec.names(2), true, opts);
  for (auto& g : select_component(j2.component_plus, j2.component_minus, pt).ideal.generators)
    I.add(g.embed(u));
  return I;
}

struct GoldenReport {
  std::string file;
  BasisDiff diff;
};

/// Compares the first-joint lex basis, the final system and the variety
/// against the files in `dir`.
inline std::vector<GoldenReport> bricard_golden_diff(const AnalysisReport& rep,
                                                     const std::string& dir,
                                                     const GroebnerOptions& opts = {}) {
  std::vector<GoldenReport> out;
  auto g = read_ideal_file(dir + "/bricard_g.ideal");
  auto I1 = bricard_first_ideal(opts);
  out.push_back({"bricard_g.ideal",
                 basis_diff(I1, g.ideal, g.order.value_or(MonomialOrder::lex(I1.universe->size())),
                            opts)});
  auto h = read_ideal_file(dir + "/bricard_h.ideal");
  out.push_back({"bricard_h.ideal",
                 basis_diff(rep.final_ideal, h.ideal,
                            MonomialOrder::degrevlex(rep.universe->size()), opts)});
  auto v = read_ideal_file(dir + "/bricard_variety.ideal");
  const auto& E = rep.elimination;
  if (E.universe())
    out.push_back({"bricard_variety.ideal",
                   basis_diff(E.presentation(), v.ideal,
                              MonomialOrder::degrevlex(E.universe()->size()), opts)});
  else
    out.push_back({"bricard_variety.ideal", BasisDiff{{"no elimination ideal"}, {}}});
  return out;
}

}  // namespace kinalg
