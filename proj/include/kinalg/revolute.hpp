#pragma once

// Revolute joint constraints and their splitting into two components.
//
// A joint between bodies with Euler parameters a (carrying the plane basis
// eta, xi in its local frame) and b (carrying the axis chi) imposes
//   <R(a) eta, R(b) chi> = <R(a) xi, R(b) chi> = 0.
// In the reference frame (eta, xi, chi) = (e1, e2, e3) with parameters u, z
// the ideal is the intersection of two ideals generated by quadrics k^1,
// k^2. A general frame is reduced to the reference one through
// u = Ktilde(alpha)^T a / |alpha|, z = Ktilde(beta)^T b / |beta|.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinalg/euler.hpp"
#include "kinalg/groebner.hpp"

namespace kinalg {

inline Universe reference_joint_universe() {
  static Universe u = make_universe({"u0", "u1", "u2", "u3", "z0", "z1", "z2", "z3"});
  return u;
}

struct CanonicalComponents {
  std::vector<Polynomial> k1;
  std::vector<Polynomial> k2;
  std::vector<Polynomial> normalizers;
};

/// The ten quadrics k^j_m and |u|^2 - 1, |z|^2 - 1 in (u, z).
inline CanonicalComponents canonical_components() {
  auto U = reference_joint_universe();
  CanonicalComponents c;
  c.k1 = parse_polys({"z1*u3 + z0*u2 - z3*u1 - z2*u0", "z2*u3 - z3*u2 - z0*u1 + z1*u0",
                      "z3*z1 + z2*z0 - u3*u1 - u2*u0", "z3*z2 - z1*z0 - u3*u2 + u1*u0",
                      "z2^2 + z1^2 - u2^2 - u1^2"},
                     U);
  c.k2 = parse_polys({"z0*u3 - z1*u2 + z2*u1 - z3*u0", "z3*u3 + z2*u2 + z1*u1 + z0*u0",
                      "z3*z1 + z2*z0 + u3*u1 + u2*u0", "z3*z2 - z1*z0 + u3*u2 - u1*u0",
                      "z3^2 + z0^2 - u2^2 - u1^2"},
                     U);
  c.normalizers = parse_polys({"u0^2 + u1^2 + u2^2 + u3^2 - 1", "z0^2 + z1^2 + z2^2 + z3^2 - 1"}, U);
  return c;
}

/// Plane basis (eta, xi) on one body and axis chi on the other, each given
/// in that body's local coordinates.
struct JointFrame {
  Vector3 eta;
  Vector3 xi;
  Vector3 chi;

  /// Throws unless eta, xi, chi are unit and eta, xi orthogonal. chi is
  /// expressed in another body's frame, so it is not compared with the plane.
  void validate() const {
    if (!norm2(eta).is_one()) throw InvalidArgument("joint frame: |eta| != 1");
    if (!norm2(xi).is_one()) throw InvalidArgument("joint frame: |xi| != 1");
    if (!norm2(chi).is_one()) throw InvalidArgument("joint frame: |chi| != 1");
    if (!dot(eta, xi).is_zero()) throw InvalidArgument("joint frame: eta not orthogonal to xi");
  }
};

/// Variable names of one body's Euler parameters, e.g. {"a0","a1","a2","a3"}.
using QuadNames = std::array<std::string, 4>;

inline QuadNames quad_names(const std::string& prefix) {
  return {prefix + "0", prefix + "1", prefix + "2", prefix + "3"};
}

inline Quad<Polynomial> quad_vars(const Universe& u, const QuadNames& n) {
  return {Polynomial::variable(u, n[0]), Polynomial::variable(u, n[1]),
          Polynomial::variable(u, n[2]), Polynomial::variable(u, n[3])};
}

/// q1, q2, |a|^2 - 1, |b|^2 - 1 over `u`.
inline IdealPresentation joint_ideal(const JointFrame& frame, const Universe& u,
                                     const QuadNames& a_names, const QuadNames& b_names) {
  frame.validate();
  auto a = quad_vars(u, a_names);
  auto b = quad_vars(u, b_names);
  auto Ra = matrix_R(a);
  auto Rb = matrix_R(b);
  auto chi = Rb * lift(frame.chi, u);
  Polynomial q1 = dot(Ra * lift(frame.eta, u), chi);
  Polynomial q2 = dot(Ra * lift(frame.xi, u), chi);
  Polynomial one(u, Rational(1));
  return IdealPresentation(u, std::vector<Polynomial>{q1, q2, norm2(a) - one, norm2(b) - one});
}

/// beta with R(beta) e3 = |beta|^2 chi for a unit axis chi.
inline EulerQuadruple beta_for_axis(const Vector3& chi) {
  if (!norm2(chi).is_one()) throw InvalidArgument("axis must be a unit vector");
  if (chi[0].is_zero() && chi[1].is_zero())
    return chi[2].sign() > 0 ? EulerQuadruple{1, 0, 0, 0} : EulerQuadruple{0, 1, 0, 0};
  return {Rational(1) + chi[2], -chi[1], chi[0], Rational(0)};
}

/// |beta|^2 = 2 (1 + chi3) for the generic axis formula.
inline Rational beta_norm2_closed_form(const Vector3& chi) { return Rational(2) * (Rational(1) + chi[2]); }

inline EulerQuadruple alpha1_formula(const Vector3& eta, const Vector3& xi) {
  const auto& [h1, h2, h3] = eta;
  const auto& [x1, x2, x3] = xi;
  return {h2 - x1, h2 * x3 - x2 * h3 + h3, x1 * h3 - x3 * h1 + x3,
          Rational(1) - h2 * x1 + x2 * h1 - x2 - h1};
}
inline EulerQuadruple alpha2_formula(const Vector3& eta, const Vector3& xi) {
  const auto& [h1, h2, h3] = eta;
  const auto& [x1, x2, x3] = xi;
  return {h2 * x3 - x2 * h3 - h3, h2 + x1, Rational(1) + h2 * x1 - x2 * h1 + x2 - h1,
          x1 * h3 - x3 * h1 + x3};
}
inline Rational alpha1_norm2_closed_form(const Vector3& eta, const Vector3& xi) {
  return Rational(4) * (Rational(1) - eta[0] - xi[1] + eta[0] * xi[1] - eta[1] * xi[0]);
}
inline Rational alpha2_norm2_closed_form(const Vector3& eta, const Vector3& xi) {
  return Rational(4) * (Rational(1) - eta[0] + xi[1] - eta[0] * xi[1] + eta[1] * xi[0]);
}

/// R(alpha) e1 = |alpha|^2 eta and R(alpha) e2 = |alpha|^2 xi.
inline bool alpha_maps_plane(const EulerQuadruple& alpha, const Vector3& eta, const Vector3& xi) {
  if (is_zero_vector(alpha)) return false;
  Rational n = norm2(alpha);
  return rotate_basis(alpha, 1) == scale(n, eta) && rotate_basis(alpha, 2) == scale(n, xi);
}

enum class AlphaSource { formula1, formula2, rotation_rows };

struct AlphaChoice {
  EulerQuadruple alpha;
  AlphaSource source;
};

/// Quadruple proportional to the Euler parameters of the rotation Q with
/// columns (eta, xi, eta x xi), read off a nonzero row of the rank-one
/// matrix a a^T whose entries are linear in Q.
inline EulerQuadruple quad_from_rotation_rows(const Vector3& eta, const Vector3& xi) {
  Vector3 chi = cross(eta, xi);
  auto Q = [&](int r, int c) -> const Rational& {
    return c == 0 ? eta[r] : c == 1 ? xi[r] : chi[r];
  };
  Rational one(1);
  Rational m00 = one + Q(0, 0) + Q(1, 1) + Q(2, 2);
  Rational m11 = one + Q(0, 0) - Q(1, 1) - Q(2, 2);
  Rational m22 = one - Q(0, 0) + Q(1, 1) - Q(2, 2);
  Rational m33 = one - Q(0, 0) - Q(1, 1) + Q(2, 2);
  Rational m01 = Q(2, 1) - Q(1, 2), m02 = Q(0, 2) - Q(2, 0), m03 = Q(1, 0) - Q(0, 1);
  Rational m12 = Q(0, 1) + Q(1, 0), m13 = Q(0, 2) + Q(2, 0), m23 = Q(1, 2) + Q(2, 1);
  std::array<EulerQuadruple, 4> rows{EulerQuadruple{m00, m01, m02, m03},
                                     EulerQuadruple{m01, m11, m12, m13},
                                     EulerQuadruple{m02, m12, m22, m23},
                                     EulerQuadruple{m03, m13, m23, m33}};
  for (std::size_t i = 0; i < 4; ++i) {
    if (rows[i][i].is_zero()) continue;
    Rational s = rows[i][0].is_zero() ? rows[i][i] : rows[i][0];
    EulerQuadruple r = rows[i];
    for (auto& x : r) x = x / s;
    return r;
  }
  throw InvalidArgument("plane basis does not define a rotation");
}

/// A nonzero alpha mapping (e1, e2) onto (eta, xi) up to the factor |alpha|^2.
/// Prefers the first closed formula, then the second; when both vanish
/// (the plane contains e1, or equals span{e1, e2}) reads alpha off the
/// rotation matrix instead.
inline AlphaChoice alpha_for_plane(const Vector3& eta, const Vector3& xi) {
  if (!norm2(eta).is_one() || !norm2(xi).is_one() || !dot(eta, xi).is_zero())
    throw InvalidArgument("plane basis must be orthonormal");
  auto a1 = alpha1_formula(eta, xi);
  if (alpha_maps_plane(a1, eta, xi)) return {a1, AlphaSource::formula1};
  auto a2 = alpha2_formula(eta, xi);
  if (alpha_maps_plane(a2, eta, xi)) return {a2, AlphaSource::formula2};
  auto a3 = quad_from_rotation_rows(eta, xi);
  if (!alpha_maps_plane(a3, eta, xi))
    throw VerificationFailure("no quadruple maps e1, e2 onto the plane basis");
  return {a3, AlphaSource::rotation_rows};
}

/// Linear forms U = Ktilde(alpha)^T a and Z = Ktilde(beta)^T b; the
/// reference parameters are u = U / |alpha|, z = Z / |beta|.
struct ChangeOfVariables {
  Quad<Polynomial> U;
  Quad<Polynomial> Z;
  Rational alpha_norm2;
  Rational beta_norm2;
};

inline ChangeOfVariables change_of_variables(const EulerQuadruple& alpha, const EulerQuadruple& beta,
                                             const Universe& u, const QuadNames& a_names,
                                             const QuadNames& b_names) {
  if (is_zero_vector(alpha) || is_zero_vector(beta))
    throw InvalidArgument("alpha and beta must be nonzero");
  auto a = quad_vars(u, a_names);
  auto b = quad_vars(u, b_names);
  ChangeOfVariables cv;
  cv.U = matrix_Ktilde(lift(alpha, u)).transpose() * a;
  cv.Z = matrix_Ktilde(lift(beta, u)).transpose() * b;
  cv.alpha_norm2 = norm2(alpha);
  cv.beta_norm2 = norm2(beta);
  return cv;
}

/// Pulls a reference quadric back through the change of variables, cleared
/// of the square roots |alpha|, |beta|: a bilinear k(u, z) becomes k(U, Z),
/// a difference of pure quadrics zz(z) + uu(u) becomes
/// |alpha|^2 zz(Z) + |beta|^2 uu(U).
inline Polynomial pull_back(const Polynomial& k, const ChangeOfVariables& cv, const Universe& u) {
  auto R = reference_joint_universe();
  std::vector<Term> mixed, zz, uu;
  for (auto& t : k.terms()) {
    unsigned du = t.mono[0] + t.mono[1] + t.mono[2] + t.mono[3];
    unsigned dz = t.mono.degree() - du;
    if (du == 1 && dz == 1) mixed.push_back(t);
    else if (du == 0 && dz == 2) zz.push_back(t);
    else if (du == 2 && dz == 0) uu.push_back(t);
    else throw InvalidArgument("reference quadric has an unexpected term");
  }
  std::map<std::string, Polynomial> bind;
  for (int i = 0; i < 4; ++i) {
    bind.emplace("u" + std::to_string(i), cv.U[i]);
    bind.emplace("z" + std::to_string(i), cv.Z[i]);
  }
  auto sub = [&](std::vector<Term> ts) {
    return Polynomial::from_terms(R, std::move(ts)).substitute(bind, u);
  };
  if (!mixed.empty()) {
    if (!zz.empty() || !uu.empty())
      throw InvalidArgument("reference quadric mixes bilinear and pure terms");
    return sub(mixed);
  }
  return sub(zz) * cv.alpha_norm2 + sub(uu) * cv.beta_norm2;
}

enum class ComponentSide { plus, minus };

inline const char* to_string(ComponentSide s) { return s == ComponentSide::plus ? "plus" : "minus"; }

struct JointDecomposition {
  Universe universe;  // a names then b names
  QuadNames a_names;
  QuadNames b_names;
  JointFrame frame;
  IdealPresentation original;
  IdealPresentation component_plus;   // from k^1
  IdealPresentation component_minus;  // from k^2
  EulerQuadruple alpha;
  AlphaSource alpha_source = AlphaSource::formula1;
  EulerQuadruple beta;
  ChangeOfVariables cv;
  bool verified = false;

  const IdealPresentation& component(ComponentSide s) const {
    return s == ComponentSide::plus ? component_plus : component_minus;
  }
};

/// Throws VerificationFailure unless every original generator lies in both
/// components and the components have disjoint varieties.
inline void verify_decomposition(const JointDecomposition& d, const GroebnerOptions& opts = {}) {
  auto order = MonomialOrder::degrevlex(d.universe->size());
  for (auto side : {ComponentSide::plus, ComponentSide::minus}) {
    auto G = buchberger(d.component(side), order, opts);
    for (auto& q : d.original.generators)
      if (!G.contains(q))
        throw VerificationFailure(std::string("joint generator not in ") + to_string(side) +
                                  " component: " + q.to_string());
  }
  if (!is_trivial(d.component_plus + d.component_minus, opts))
    throw VerificationFailure("joint components intersect");
}

/// Splits the joint ideal into its two components over the eight variables
/// a_names, b_names.
inline JointDecomposition decompose_joint(const JointFrame& frame, const QuadNames& a_names,
                                          const QuadNames& b_names, bool verify = true,
                                          const GroebnerOptions& opts = {}) {
  frame.validate();
  JointDecomposition d;
  std::vector<std::string> names(a_names.begin(), a_names.end());
  names.insert(names.end(), b_names.begin(), b_names.end());
  d.universe = make_universe(names);
  d.a_names = a_names;
  d.b_names = b_names;
  d.frame = frame;
  d.original = joint_ideal(frame, d.universe, a_names, b_names);
  auto ac = alpha_for_plane(frame.eta, frame.xi);
  d.alpha = ac.alpha;
  d.alpha_source = ac.source;
  d.beta = beta_for_axis(frame.chi);
  d.cv = change_of_variables(d.alpha, d.beta, d.universe, a_names, b_names);
  auto canon = canonical_components();
  Polynomial one(d.universe, Rational(1));
  auto na = norm2(quad_vars(d.universe, a_names)) - one;
  auto nb = norm2(quad_vars(d.universe, b_names)) - one;
  d.component_plus = IdealPresentation(d.universe, std::vector<Polynomial>{});
  d.component_minus = IdealPresentation(d.universe, std::vector<Polynomial>{});
  for (auto& k : canon.k1) d.component_plus.add(primitive(pull_back(k, d.cv, d.universe)));
  for (auto& k : canon.k2) d.component_minus.add(primitive(pull_back(k, d.cv, d.universe)));
  for (auto* c : {&d.component_plus, &d.component_minus}) {
    c->add(na);
    c->add(nb);
  }
  if (verify) {
    verify_decomposition(d, opts);
    d.verified = true;
  }
  return d;
}

/// Substitutes the fixed body's parameters into both components, giving two
/// ideals in the other body's four variables.
inline std::pair<IdealPresentation, IdealPresentation> specialize_fixed_body(
    const JointDecomposition& d, const EulerQuadruple& fixed, char which) {
  if (!norm2(fixed).is_one()) throw InvalidArgument("fixed body quadruple must be unit");
  const QuadNames& fixed_names = which == 'a' ? d.a_names : d.b_names;
  const QuadNames& free_names = which == 'a' ? d.b_names : d.a_names;
  if (which != 'a' && which != 'b') throw InvalidArgument("which must be 'a' or 'b'");
  Universe target = make_universe({free_names.begin(), free_names.end()});
  std::map<std::string, Polynomial> bind;
  for (int i = 0; i < 4; ++i) bind.emplace(fixed_names[i], Polynomial(target, fixed[i]));
  auto spec = [&](const IdealPresentation& I) {
    IdealPresentation out(target, std::vector<Polynomial>{});
    for (auto& g : I.generators) {
      auto s = g.substitute(bind, target);
      if (!s.is_zero()) out.add(primitive(s));
    }
    return out;
  };
  return {spec(d.component_plus), spec(d.component_minus)};
}

struct ComponentSelection {
  ComponentSide side;
  IdealPresentation ideal;
};

namespace detail {
inline std::vector<std::string> failing_generators(const IdealPresentation& I,
                                                   const std::map<std::string, Rational>& point) {
  std::vector<std::string> out;
  for (auto& g : I.generators)
    if (!g.evaluate(point).is_zero()) out.push_back(g.to_string());
  return out;
}
inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}
}  // namespace detail

/// The component whose generators all vanish at `point`.
inline ComponentSelection select_component(const IdealPresentation& plus,
                                           const IdealPresentation& minus,
                                           const std::map<std::string, Rational>& point) {
  auto fp = detail::failing_generators(plus, point);
  auto fm = detail::failing_generators(minus, point);
  if (fp.empty() && fm.empty())
    throw VerificationFailure("point lies on both components");
  if (!fp.empty() && !fm.empty())
    throw VerificationFailure("point lies on neither component; plus fails at " +
                              detail::join(fp) + "; minus fails at " + detail::join(fm));
  if (fp.empty()) return {ComponentSide::plus, plus};
  return {ComponentSide::minus, minus};
}

}  // namespace kinalg
