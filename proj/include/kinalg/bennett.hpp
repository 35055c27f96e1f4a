#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "kinalg/mechanism.hpp"

namespace kinalg {

/// Shape parameters of a 4R loop whose axes are orthogonal to both
/// adjacent sides.
struct BennettParameters {
  Rational m0, m1, m2;

  /// Throws naming the first violated admissibility condition.
  void validate() const {
    if (m0.is_zero()) throw InvalidArgument("inadmissible parameters: m0 = 0 (planar case)");
    if (m1.is_zero()) throw InvalidArgument("inadmissible parameters: m1 = 0 (planar case)");
    if (m2.is_zero()) throw InvalidArgument("inadmissible parameters: m2 = 0 (p1 = p3)");
    if (m2 == Rational(1) || m2 == Rational(-1))
      throw InvalidArgument("inadmissible parameters: m2 = +-1 (r = 0)");
  }
  bool admissible() const {
    return !m0.is_zero() && !m1.is_zero() && !m2.is_zero() && m2 != Rational(1) &&
           m2 != Rational(-1);
  }
  /// The region on which the shape map is injective.
  bool in_injective_region() const {
    return (m0 >= Rational(1) || m0 < Rational(-1)) && !m2.is_zero() && m2.abs() < Rational(1) &&
           !m1.is_zero();
  }
  std::string to_string() const {
    return m0.to_string() + "," + m1.to_string() + "," + m2.to_string();
  }
  friend bool operator==(const BennettParameters&, const BennettParameters&) = default;
};

/// The two involutions generating the fibres of bennett_f.
inline BennettParameters bennett_g1(const BennettParameters& m) {
  return {m.m0, -m.m1.inverse(), m.m2.inverse()};
}
inline BennettParameters bennett_g2(const BennettParameters& m) {
  return {-m.m0.inverse(), -m.m1, -m.m2};
}

/// Helper quantities q, q0..q5.
struct BennettQ {
  Rational q, q0, q1, q2, q3, q4, q5;
};

inline BennettQ bennett_q(const BennettParameters& m) {
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  BennettQ Q;
  Q.q = m0 * m0 * (m2 - 1) * (m2 - 1) + (m2 + 1) * (m2 + 1);
  Q.q4 = m0 * m0 * (m2 - 1) + m2 + 1;
  Q.q5 = m1 * (m0 * m0 - 1) - 2 * m0;
  Q.q0 = Q.q4 * (m1 * m1 + m2) - 2 * m0 * (m2 - 1) * m1;
  Q.q1 = Q.q4 * m1 * (m2 - 1) + 2 * m0 * (m1 * m1 + m2);
  Rational s = m1 * m1 + m2 * m2;
  Q.q2 = (1 - m2) * s * (m1 * m1 * m0 + m2 * m1 + m2 * m0 - 3 * m1);
  Q.q3 = s * (m2 * m1 * (m2 * m0 - m1 - 2 * m0) - m2 * m2 + 3 * m1 * m1 + m1 * m0 + 3 * m2);
  return Q;
}

struct BennettGeometry {
  Rational r;
  std::array<Vector3, 4> p;
  std::array<Vector3, 4> chi;
  std::array<Vector3, 4> eta;
  std::array<Vector3, 4> xi;
};

inline BennettGeometry bennett_geometry(const BennettParameters& m) {
  m.validate();
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q = bennett_q(m).q;
  const Rational a = m0 * m0 + 1, b = m1 * m1 + 1, s = m1 * m1 + m2 * m2;
  BennettGeometry g;
  g.r = a * (1 - m2 * m2) / q;
  const Rational& r = g.r;
  Rational x1 = r * (m1 * m1 - 1) / b;
  Rational x2 = 2 * r * m1 * (m0 * m0 - 1) / (a * b);
  Rational x3 = 4 * r * m0 * m1 / (a * b);
  Rational y1 = r * (m1 * m1 - m2 * m2) / s;
  Rational y2 = 2 * r * m1 * m2 / s;
  g.p = {Vector3{0, 0, 0}, Vector3{1, 0, 0}, Vector3{1 + x1, x2, x3}, Vector3{y1, y2, 0}};

  g.chi[0] = e3();
  g.chi[1] = {Rational(0), -2 * m0 / a, (m0 * m0 - 1) / a};
  Rational d2 = a * b * q;
  g.chi[2] = {4 * m0 * m1 * (1 - m2 * m2) * a / d2,
              4 * m0 * (m2 * a * b - (m0 * m0 - 1) * s) / d2,
              ((m2 - 1) * (m2 - 1) * b * m0.pow(4) +
               2 * ((m2 * m2 - 3) * m1 * m1 - 3 * m2 * m2 + 1) * m0 * m0 + (m2 + 1) * (m2 + 1) * b) /
                  d2};
  Rational d3 = s * q;
  g.chi[3] = {4 * m0 * m1 * m2 * (1 - m2 * m2) / d3, 2 * m0 * (m2 * m2 - m1 * m1) * (1 - m2 * m2) / d3,
              (m0 * m2 - m0 + m2 + 1) * (m0 * m2 - m0 - m2 - 1) * s / d3};

  g.eta[0] = e1();
  g.xi[0] = e2();
  for (int l = 1; l < 4; ++l) std::tie(g.eta[l], g.xi[l]) = plane_basis(g.chi[l]);
  return g;
}

/// The three shape conditions of a 4R loop, the third squared.
struct BennettConditionsReport {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3_squared = false;
  bool orthogonal_axes = false;  // each axis orthogonal to both adjacent sides
  bool planar = false;
  Rational cos_phi0, cos_phi1;
  Rational side0_squared, side1_squared;
};

inline BennettConditionsReport bennett_conditions_check(const std::array<Vector3, 4>& p,
                                                        const std::array<Vector3, 4>& chi) {
  std::array<Vector3, 4> v;
  for (int l = 0; l < 4; ++l) v[l] = p[(l + 1) % 4] - p[l];
  BennettConditionsReport rep;
  rep.side0_squared = norm2(v[0]);
  rep.side1_squared = norm2(v[1]);
  rep.cond1 = norm2(v[0]) == norm2(v[2]) && norm2(v[1]) == norm2(v[3]);
  rep.cos_phi0 = dot(chi[0], chi[1]);
  rep.cos_phi1 = dot(chi[1], chi[2]);
  rep.cond2 = dot(chi[0], chi[1]) == dot(chi[2], chi[3]) &&
              dot(chi[1], chi[2]) == dot(chi[3], chi[0]);
  rep.cond3_squared = rep.side0_squared * (1 - rep.cos_phi1 * rep.cos_phi1) ==
                      rep.side1_squared * (1 - rep.cos_phi0 * rep.cos_phi0);
  rep.orthogonal_axes = true;
  for (int l = 0; l < 4; ++l)
    if (!dot(chi[l], v[l]).is_zero() || !dot(chi[l], v[(l + 3) % 4]).is_zero())
      rep.orthogonal_axes = false;
  rep.planar = dot(cross(v[0], v[1]), v[2]).is_zero();
  return rep;
}

/// (p^2_1, p^2_2, p^2_3, p^3_1, p^3_2) in closed form.
inline std::array<Rational, 5> bennett_f(const BennettParameters& m) {
  m.validate();
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q = bennett_q(m).q;
  const Rational k2 = Rational(2) / (q * (m1 * m1 + 1));
  const Rational k3 = (m0 * m0 + 1) * (m2 * m2 - 1) / (q * (m1 * m1 + m2 * m2));
  return {k2 * (m0 * m0 * (m2 - 1) * (m2 - m1 * m1) + (m2 + 1) * (m2 + m1 * m1)),
          k2 * (m1 * (m0 * m0 - 1) * (1 - m2 * m2)), k2 * (2 * m0 * m1 * (1 - m2 * m2)),
          k3 * (m2 * m2 - m1 * m1), -k3 * (2 * m1 * m2)};
}

/// Orientations of bodies a, b, c with R(a)e1 = v1/r, R(b)e1 = v2, R(c)e1 = v3/r.
inline InitialConfiguration bennett_initial(const BennettParameters& m) {
  m.validate();
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const auto Q = bennett_q(m);
  const Rational a = m0 * m0 + 1, b = m1 * m1 + 1, s = m1 * m1 + m2 * m2;
  InitialConfiguration init;
  init.quads["a"] = {m1 / b, m1 * m1 / b, Q.q5 / (a * b), (m0 * m0 + 2 * m0 * m1 - 1) / (a * b)};
  const Rational d = b * s * Q.q;
  init.quads["b"] = {
      m1 * (m2 * m2 - 1) * Q.q0 / d, m1 * (m2 * m2 - 1) * Q.q1 / d,
      ((1 - m2) * (m1 * m1 - m2) * Q.q1 + 2 * Q.q2 -
       8 * s * (m1 * m1 * m0 + m2 * m1 + m2 * m0 - m1) / a) /
          d,
      ((1 - m2) * (m1 * m1 - m2) * Q.q0 + 2 * Q.q3 +
       8 * s * (m2 * m1 * m0 - m1 * m1 - m1 * m0 - m2) / a) /
          d};
  init.quads["c"] = {-m1 * m2 / s, -m2 * m2 / s, m1 * m2 / s, m1 * m1 / s};
  return init;
}

/// Residuals of the three orientation equations and the three norms.
struct BennettInitialReport {
  std::array<Vector3, 3> frame_residual;
  std::array<Rational, 3> norm_residual;
  bool ok() const {
    for (auto& v : frame_residual)
      if (!is_zero_vector(v)) return false;
    for (auto& n : norm_residual)
      if (!n.is_zero()) return false;
    return true;
  }
};

inline BennettInitialReport bennett_initial_check(const BennettParameters& m,
                                                  const InitialConfiguration& init) {
  auto g = bennett_geometry(m);
  BennettInitialReport rep;
  const char* names[3] = {"a", "b", "c"};
  const Rational factor[3] = {g.r, Rational(1), g.r};
  for (int k = 0; k < 3; ++k) {
    const auto& x = init.at(names[k]);
    Vector3 v = g.p[(k + 2) % 4] - g.p[k + 1];
    rep.frame_residual[k] = v - scale(factor[k], rotate_basis(x, 1));
    rep.norm_residual[k] = norm2(x) - 1;
  }
  return rep;
}

/// Coefficients of the b-lift: b0 = t0 a0 c0, b1 = t1 a0 c0,
/// b2 = t2 a0 c2 + t3 a2 c0, b3 = t4 a0 c2 + t5 a2 c0.
inline std::array<Rational, 6> bennett_t_coefficients(const BennettParameters& m) {
  m.validate();
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const auto Q = bennett_q(m);
  if (Q.q5.is_zero())
    throw InvalidArgument("q5 = 0: use the q5 = 0 system (bennett_q5zero_system)");
  const Rational a = m0 * m0 + 1;
  const Rational w = Q.q4 * Q.q4 - 4 * m0 * m0;
  return {(m2 * m2 - 1) * Q.q0 / (m1 * m2 * Q.q), (m2 * m2 - 1) * Q.q1 / (m1 * m2 * Q.q),
          (m1 * (m2 - 1) * w + 4 * m0 * Q.q4 * (m1 * m1 + m2)) / (m2 * a * Q.q),
          (m1 * (m2 - 1) * (m0 * m0 - 1) - 2 * m0 * (m2 + m1 * m1)) / (m1 * Q.q5),
          ((m1 * m1 + m2) * w - 4 * m0 * m1 * (m2 - 1) * Q.q4) / (m2 * a * Q.q),
          ((m2 + m1 * m1) * (m0 * m0 - 1) + 2 * m0 * m1 * (m2 - 1)) / (m1 * Q.q5)};
}

/// Twelve-variable 4R loop; body "o" is fixed.
inline std::pair<MechanismSpec, InitialConfiguration> bennett_preset(const BennettParameters& m) {
  auto g = bennett_geometry(m);
  MechanismSpec s;
  s.name = "bennett";
  s.family = "bennett";
  s.bodies = {{"o", true}, {"a"}, {"b"}, {"c"}};
  for (std::size_t l = 0; l < 4; ++l)
    s.joints.push_back({(l + 3) % 4, l, g.p[l], g.chi[l], std::pair{g.eta[l], g.xi[l]}});
  const bool q5zero = bennett_q(m).q5.is_zero();
  if (q5zero) {
    s.variable_order = {"a2", "a1", "c3", "c1", "b3", "b2", "b1", "b0", "c2", "c0", "a3", "a0"};
    s.essential = {"c2", "c0", "a3", "a0"};
  } else {
    s.variable_order = {"a3", "a1", "c3", "c1", "b3", "b2", "b1", "b0", "c2", "c0", "a2", "a0"};
    s.essential = {"c2", "c0", "a2", "a0"};
  }
  s.parameters = {{"m0", m.m0}, {"m1", m.m1}, {"m2", m.m2}};
  return {s, bennett_initial(m)};
}

/// The reference components at the two joints touching the fixed body, over
/// a's and c's variables respectively (q5 != 0).
inline IdealPresentation bennett_component_a(const BennettParameters& m) {
  const Rational &m0 = m.m0, &m1 = m.m1;
  const Rational q5 = bennett_q(m).q5;
  Universe u = make_universe({"a3", "a1", "a2", "a0"});
  auto v = [&](const char* n) { return Polynomial::variable(u, n); };
  const Rational b = m1 * m1 + 1, a = m0 * m0 + 1;
  return IdealPresentation(u, std::vector<Polynomial>{
                                  v("a1") - v("a0") * m1,
                                  v("a3") * q5 - v("a2") * (m0 * m0 + 2 * m0 * m1 - 1),
                                  v("a0") * v("a0") * (b * q5 * q5) +
                                      v("a2") * v("a2") * (b * a * a) - Polynomial(u, q5 * q5)});
}

inline IdealPresentation bennett_component_c(const BennettParameters& m) {
  const Rational &m1 = m.m1, &m2 = m.m2;
  Universe u = make_universe({"c3", "c1", "c2", "c0"});
  auto v = [&](const char* n) { return Polynomial::variable(u, n); };
  const Rational s = m1 * m1 + m2 * m2;
  return IdealPresentation(
      u, std::vector<Polynomial>{v("c1") * m1 - v("c0") * m2, v("c3") * m2 - v("c2") * m1,
                                 v("c0") * v("c0") * (m2 * m2 * s) + v("c2") * v("c2") * (m1 * m1 * s) -
                                     Polynomial(u, m1 * m1 * m2 * m2)});
}

/// g0, g1, g3 over (c2, c0, a2, a0) inside `u`.
inline IdealPresentation bennett_variety_ideal(const BennettParameters& m, const Universe& u) {
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q5 = bennett_q(m).q5;
  if (q5.is_zero()) throw InvalidArgument("q5 = 0: use the q5 = 0 system");
  auto v = [&](const char* n) { return Polynomial::variable(u, n); };
  const Rational a = m0 * m0 + 1;
  return IdealPresentation(
      u, std::vector<Polynomial>{
             v("a0") * v("a0") + v("a2") * v("a2") * (a * a / (q5 * q5)) -
                 Polynomial(u, (m1 * m1 + 1).inverse()),
             v("c0") * v("c0") * (m2 * m2) + v("c2") * v("c2") * (m1 * m1) -
                 Polynomial(u, m1 * m1 * m2 * m2 / (m1 * m1 + m2 * m2)),
             v("c2") * v("a2") * (m1 * a) + v("c0") * v("a0") * q5});
}

/// Relations x = value(essential) of the final ideal (q5 != 0), over `u`.
inline std::vector<LiftRelation> bennett_lift_relations(const BennettParameters& m,
                                                        const Universe& u) {
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q5 = bennett_q(m).q5;
  auto t = bennett_t_coefficients(m);
  auto v = [&](const char* n) { return Polynomial::variable(u, n); };
  auto a0 = v("a0"), a2 = v("a2"), c0 = v("c0"), c2 = v("c2");
  return {{"a1", a0 * m1},
          {"a3", a2 * ((m0 * m0 + 2 * m0 * m1 - 1) / q5)},
          {"c1", c0 * (m2 / m1)},
          {"c3", c2 * (m1 / m2)},
          {"b0", a0 * c0 * t[0]},
          {"b1", a0 * c0 * t[1]},
          {"b2", a0 * c2 * t[2] + a2 * c0 * t[3]},
          {"b3", a0 * c2 * t[4] + a2 * c0 * t[5]}};
}

template <class T>
struct BennettPoint {
  T a0, a2, c0, c2;
};

namespace detail {
template <class T>
T from_rational(const Rational& x);
template <>
inline double from_rational<double>(const Rational& x) {
  return x.to_double();
}
template <>
inline Rational from_rational<Rational>(const Rational& x) {
  return x;
}
inline double sqrt_of(double x) { return std::sqrt(x); }
inline Rational sqrt_of(const Rational& x) {
  auto r = x.exact_sqrt();
  if (!r) throw InvalidArgument("no rational square root of " + x.to_string());
  return *r;
}
}  // namespace detail

/// All twelve coordinates from (a0, a2, c0, c2); q5 != 0.
template <class T>
std::map<std::string, T> bennett_lift(const BennettPoint<T>& p, const BennettParameters& m) {
  m.validate();
  auto R = [](const Rational& x) { return detail::from_rational<T>(x); };
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q5 = bennett_q(m).q5;
  auto t = bennett_t_coefficients(m);
  std::map<std::string, T> x;
  x["a0"] = p.a0;
  x["a1"] = R(m1) * p.a0;
  x["a2"] = p.a2;
  x["a3"] = R((m0 * m0 + 2 * m0 * m1 - 1) / q5) * p.a2;
  x["c0"] = p.c0;
  x["c1"] = R(m2 / m1) * p.c0;
  x["c2"] = p.c2;
  x["c3"] = R(m1 / m2) * p.c2;
  x["b0"] = R(t[0]) * p.a0 * p.c0;
  x["b1"] = R(t[1]) * p.a0 * p.c0;
  x["b2"] = R(t[2]) * p.a0 * p.c2 + R(t[3]) * p.a2 * p.c0;
  x["b3"] = R(t[4]) * p.a0 * p.c2 + R(t[5]) * p.a2 * p.c0;
  return x;
}

template <class T>
BennettPoint<T> bennett_project(const std::map<std::string, T>& x) {
  return {x.at("a0"), x.at("a2"), x.at("c0"), x.at("c2")};
}

/// The variety point for u = cos t / sqrt(m1^2+1), w = sin t / sqrt(m1^2+1);
/// branch -1 flips the sign of c.
template <class T>
BennettPoint<T> bennett_point(const T& u, const T& w, const BennettParameters& m, int branch = 1) {
  m.validate();
  auto R = [](const Rational& x) { return detail::from_rational<T>(x); };
  const Rational &m0 = m.m0, &m1 = m.m1, &m2 = m.m2;
  const Rational q5 = bennett_q(m).q5;
  // q6 / (m1^2 + 1)
  T q6 = R(m1 * m1 + m2 * m2) * (R(m2 * m2) * w * w + u * u);
  T root = detail::sqrt_of(q6);
  T sgn = R(Rational(branch < 0 ? -1 : 1));
  return {u, -R(q5 / (m0 * m0 + 1)) * w, sgn * R(m1 * m2) * w / root, sgn * R(m2) * u / root};
}

inline BennettPoint<double> bennett_parametrize(double t, const BennettParameters& m, int branch = 1) {
  double k = std::sqrt((m.m1 * m.m1 + 1).to_double());
  return bennett_point(std::cos(t) / k, std::sin(t) / k, m, branch);
}

/// The system for q5 = 0, where m1 = 2 m0 / (m0^2 - 1) and a2 = 0.
struct Q5ZeroSystem {
  BennettParameters m;
  IdealPresentation generators;  // three generators over (c2, c0, a3, a0)
  std::vector<LiftRelation> lift;  // over the twelve variables
  Universe universe;               // twelve variables
};

inline Q5ZeroSystem bennett_q5zero_system(const Rational& m0, const Rational& m2) {
  if (m0.is_zero() || m0 == Rational(1) || m0 == Rational(-1))
    throw InvalidArgument("q5 = 0 system needs m0 not in {0, 1, -1}");
  Q5ZeroSystem S;
  S.m = {m0, 2 * m0 / (m0 * m0 - 1), m2};
  S.m.validate();
  const Rational& m1 = S.m.m1;
  const Rational a = m0 * m0 + 1, d = m0 * m0 - 1;
  Universe e = make_universe({"c2", "c0", "a3", "a0"});
  auto v = [&](const Universe& u, const char* n) { return Polynomial::variable(u, n); };
  S.generators = IdealPresentation(
      e, std::vector<Polynomial>{
             v(e, "a0") * v(e, "a0") * (a * a / (d * d)) + v(e, "a3") * v(e, "a3") - Polynomial(e, 1),
             // the constant is m1^2 m2^2 / (m1^2 + m2^2) at m1 = 2 m0 / (m0^2 - 1)
             v(e, "c0") * v(e, "c0") * (m2 * m2) + v(e, "c2") * v(e, "c2") * (4 * m0 * m0 / (d * d)) -
                 Polynomial(e, 4 * m0 * m0 * m2 * m2 / (4 * m0 * m0 + m2 * m2 * d * d)),
             v(e, "c2") * v(e, "a3") * (2 * m0) + v(e, "c0") * v(e, "a0") * a});
  // t-hat: the t formulas at m1 = 2 m0 / (m0^2 - 1); t3, t5 do not occur
  const auto Q = bennett_q(S.m);
  const Rational w = Q.q4 * Q.q4 - 4 * m0 * m0;
  const Rational t0 = (m2 * m2 - 1) * Q.q0 / (m1 * m2 * Q.q);
  const Rational t1 = (m2 * m2 - 1) * Q.q1 / (m1 * m2 * Q.q);
  const Rational t2 = (m1 * (m2 - 1) * w + 4 * m0 * Q.q4 * (m1 * m1 + m2)) / (m2 * a * Q.q);
  const Rational t4 = ((m1 * m1 + m2) * w - 4 * m0 * m1 * (m2 - 1) * Q.q4) / (m2 * a * Q.q);
  S.universe = make_universe({"a2", "a1", "c3", "c1", "b3", "b2", "b1", "b0", "c2", "c0", "a3", "a0"});
  const Universe& u = S.universe;
  auto a0 = v(u, "a0"), a3 = v(u, "a3"), c0 = v(u, "c0"), c2 = v(u, "c2");
  S.lift = {{"a1", a0 * m1},
            {"a2", Polynomial(u)},
            {"c1", c0 * (m2 * d / (2 * m0))},
            {"c3", c2 * (2 * m0 / (m2 * d))},
            {"b0", a0 * c0 * t0},
            {"b1", a0 * c0 * t1},
            {"b2", a0 * c2 * t2 - a3 * c0},
            {"b3", a0 * c2 * t4 + a3 * c0 * (m2 * d / (2 * m0))}};
  return S;
}

/// Parametrized point of the q5 = 0 system from a0 = (m0^2-1) cos t/(m0^2+1):
/// (a0, a3, c0, c2).
inline std::array<double, 4> bennett_q5zero_parametrize(double t, const Q5ZeroSystem& S,
                                                        int branch = 1) {
  const double m0 = S.m.m0.to_double(), m2 = S.m.m2.to_double();
  const double d = m0 * m0 - 1, a = m0 * m0 + 1;
  const double a0 = d * std::cos(t) / a;
  const double a3 = std::sin(t);
  // c0 : c2 from the bilinear relation, scale from the quadric
  const double u = -2 * m0 * a3, w = a * a0;  // c0 = k u, c2 = k w
  const double k2 = 4 * m0 * m0 * m2 * m2 / (4 * m0 * m0 + m2 * m2 * d * d) /
                    (m2 * m2 * u * u + 4 * m0 * m0 / (d * d) * w * w);
  const double k = (branch < 0 ? -1 : 1) * std::sqrt(k2);
  return {a0, a3, k * u, k * w};
}

}  // namespace kinalg
