#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kinalg/component.hpp"
#include "kinalg/revolute.hpp"

namespace kinalg {

// ---- mechanism description ------------------------------------------------------

struct BodySpec {
  std::string name;
  bool fixed = false;
};

/// Revolute joint between `prev`, which carries the plane (eta, xi), and
/// `next`, which carries the axis. World coordinates.
struct JointSpec {
  std::size_t prev = 0;
  std::size_t next = 0;
  Vector3 point{0, 0, 0};
  Vector3 axis{0, 0, 1};
  std::optional<std::pair<Vector3, Vector3>> plane;
};

/// Orthonormal (eta, xi) perpendicular to a unit axis.
inline std::pair<Vector3, Vector3> plane_basis(const Vector3& chi) {
  if (!norm2(chi).is_one()) throw InvalidArgument("axis must be a unit vector");
  if (chi[2] == Rational(-1)) return {e1(), Vector3{0, -1, 0}};
  Rational d = (Rational(1) + chi[2]).inverse();
  Vector3 eta{Rational(1) - chi[0] * chi[0] * d, -chi[0] * chi[1] * d, -chi[0]};
  Vector3 xi{-chi[0] * chi[1] * d, Rational(1) - chi[1] * chi[1] * d, -chi[1]};
  return {eta, xi};
}

/// A single chain or loop of rigid bodies. Body l sits between the joint
/// whose `next` is l and the joint whose `prev` is l; its edge vector is the
/// difference of those two joint points.
struct MechanismSpec {
  std::string name = "mechanism";
  std::vector<BodySpec> bodies;
  std::vector<JointSpec> joints;
  bool closed = true;
  /// Variable precedence; empty means bodies last-to-first, each as x3,x2,x1,x0.
  std::vector<std::string> variable_order;
  /// Published essential variables, used when detection is inconclusive.
  std::vector<std::string> essential;
  std::map<std::string, Rational> parameters;
  /// Preset family with a closed-form parametrization: "bricard", "bennett" or empty.
  std::string family;

  std::size_t fixed_index() const {
    for (std::size_t i = 0; i < bodies.size(); ++i)
      if (bodies[i].fixed) return i;
    throw InvalidArgument("mechanism has no fixed body");
  }
  bool is_fixed(std::size_t b) const { return bodies.at(b).fixed; }
  QuadNames names(std::size_t b) const { return quad_names(bodies.at(b).name); }

  std::vector<std::size_t> moving() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bodies.size(); ++i)
      if (!bodies[i].fixed) out.push_back(i);
    return out;
  }

  void validate() const {
    const std::size_t n = bodies.size();
    if (n < 2) throw InvalidArgument("mechanism needs at least two bodies");
    std::set<std::string> seen;
    std::size_t fixed = 0;
    for (auto& b : bodies) {
      if (b.name.empty()) throw InvalidArgument("body with empty name");
      for (char c : b.name)
        if (!std::isalpha(static_cast<unsigned char>(c)))
          throw InvalidArgument("body name '" + b.name + "' must be alphabetic");
      if (!seen.insert(b.name).second) throw InvalidArgument("duplicate body '" + b.name + "'");
      if (b.fixed) ++fixed;
    }
    if (fixed != 1) throw InvalidArgument("exactly one body must be fixed");
    if (joints.size() != (closed ? n : n - 1))
      throw InvalidArgument("a " + std::string(closed ? "closed loop" : "chain") + " of " +
                            std::to_string(n) + " bodies needs " +
                            std::to_string(closed ? n : n - 1) + " joints");
    std::set<std::size_t> nexts;
    for (std::size_t j = 0; j < joints.size(); ++j) {
      auto& J = joints[j];
      std::string tag = "joint " + std::to_string(j) + ": ";
      if (J.prev >= n || J.next >= n) throw InvalidArgument(tag + "body index out of range");
      if (J.prev != (J.next + n - 1) % n || (!closed && J.next == 0))
        throw InvalidArgument(tag + "bodies must be consecutive along the loop");
      if (!nexts.insert(J.next).second) throw InvalidArgument(tag + "repeated body pair");
      if (!norm2(J.axis).is_one()) throw InvalidArgument(tag + "axis is not a unit vector");
      if (J.plane) {
        auto& [eta, xi] = *J.plane;
        if (!norm2(eta).is_one() || !norm2(xi).is_one() || !dot(eta, xi).is_zero() ||
            !dot(eta, J.axis).is_zero() || !dot(xi, J.axis).is_zero())
          throw InvalidArgument(tag + "plane is not an orthonormal complement of the axis");
      }
    }
    if (!variable_order.empty()) {
      auto want = default_order();
      std::set<std::string> a(want.begin(), want.end()), b(variable_order.begin(),
                                                            variable_order.end());
      if (a != b || b.size() != variable_order.size())
        throw InvalidArgument("variable order must list every body parameter once");
    }
  }

  std::vector<std::string> default_order() const {
    std::vector<std::string> out;
    for (std::size_t k = bodies.size(); k-- > 0;) {
      if (bodies[k].fixed) continue;
      auto q = names(k);
      out.insert(out.end(), {q[3], q[2], q[1], q[0]});
    }
    return out;
  }
  std::vector<std::string> variables() const {
    return variable_order.empty() ? default_order() : variable_order;
  }

  JointFrame world_frame(std::size_t j) const {
    auto& J = joints.at(j);
    auto [eta, xi] = J.plane ? *J.plane : plane_basis(J.axis);
    return {eta, xi, J.axis};
  }

  /// Indices of the joints entering and leaving body b.
  std::pair<std::optional<std::size_t>, std::optional<std::size_t>> joints_of(
      std::size_t b) const {
    std::optional<std::size_t> in, out;
    for (std::size_t j = 0; j < joints.size(); ++j) {
      if (joints[j].next == b) in = j;
      if (joints[j].prev == b) out = j;
    }
    return {in, out};
  }

  /// v^b = p(outgoing joint) - p(incoming joint).
  Vector3 edge(std::size_t b) const {
    auto [in, out] = joints_of(b);
    if (!in || !out) throw InvalidArgument("body " + bodies.at(b).name + " has no edge");
    return joints[*out].point - joints[*in].point;
  }
};

struct InitialConfiguration {
  std::map<std::string, EulerQuadruple> quads;

  const EulerQuadruple& at(const std::string& body) const {
    auto it = quads.find(body);
    if (it == quads.end()) throw InvalidArgument("no initial quadruple for body " + body);
    return it->second;
  }
  std::map<std::string, Rational> point() const {
    std::map<std::string, Rational> out;
    for (auto& [name, q] : quads)
      for (int i = 0; i < 4; ++i) out[name + std::to_string(i)] = q[i];
    return out;
  }
  void validate(const MechanismSpec& spec) const {
    for (auto b : spec.moving())
      if (!norm2(at(spec.bodies[b].name)).is_one())
        throw InvalidArgument("initial quadruple of body " + spec.bodies[b].name +
                              " is not unit");
  }
};

// ---- constraint assembly --------------------------------------------------------

struct LabeledConstraint {
  std::string label;
  Polynomial poly;
};

namespace detail {

inline Mat3<Rational> local_transport(const MechanismSpec& spec, const InitialConfiguration& init,
                                      std::size_t b) {
  if (spec.is_fixed(b)) return Mat3<Rational>::identity_like(Rational(1));
  return matrix_R(init.at(spec.bodies[b].name)).transpose();
}

inline Mat3<Polynomial> body_rotation(const MechanismSpec& spec, const Universe& u,
                                      std::size_t b) {
  if (spec.is_fixed(b)) return Mat3<Polynomial>::identity_like(Polynomial(u, Rational(1)));
  return matrix_R(quad_vars(u, spec.names(b)));
}

}  // namespace detail

/// Joint frame in body-local coordinates: eta, xi in `prev`, chi in `next`.
inline JointFrame local_frame(const MechanismSpec& spec, const InitialConfiguration& init,
                              std::size_t j) {
  auto w = spec.world_frame(j);
  auto& J = spec.joints[j];
  auto Tp = detail::local_transport(spec, init, J.prev);
  auto Tn = detail::local_transport(spec, init, J.next);
  return {Tp * w.eta, Tp * w.xi, Tn * w.chi};
}

/// Order of emission: normalizations per moving body, the three loop rows,
/// then two rows per joint, joints taken from body 1 onwards with the joint
/// into body 0 last.
inline std::vector<LabeledConstraint> labeled_constraints(const MechanismSpec& spec,
                                                          const InitialConfiguration& init) {
  spec.validate();
  init.validate(spec);
  Universe u = make_universe(spec.variables());
  Polynomial one(u, Rational(1));
  std::vector<LabeledConstraint> out;
  for (auto b : spec.moving())
    out.push_back({"normalization " + spec.bodies[b].name,
                   norm2(quad_vars(u, spec.names(b))) - one});
  if (spec.closed) {
    Vec3<Polynomial> sum{Polynomial(u), Polynomial(u), Polynomial(u)};
    for (std::size_t b = 0; b < spec.bodies.size(); ++b) {
      Vector3 v = detail::local_transport(spec, init, b) * spec.edge(b);
      sum = sum + detail::body_rotation(spec, u, b) * lift(v, u);
    }
    for (int i = 0; i < 3; ++i) out.push_back({"loop row " + std::to_string(i + 1), sum[i]});
  }
  std::vector<std::size_t> order(spec.joints.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return (spec.joints[x].next == 0) < (spec.joints[y].next == 0);
  });
  for (auto j : order) {
    auto& J = spec.joints[j];
    auto f = local_frame(spec, init, j);
    auto Rp = detail::body_rotation(spec, u, J.prev);
    auto chi = detail::body_rotation(spec, u, J.next) * lift(f.chi, u);
    std::string tag = "joint " + spec.bodies[J.prev].name + "-" + spec.bodies[J.next].name;
    out.push_back({tag + " eta", dot(Rp * lift(f.eta, u), chi)});
    out.push_back({tag + " xi", dot(Rp * lift(f.xi, u), chi)});
  }
  auto pt = init.point();
  for (auto& c : out)
    if (!c.poly.evaluate(pt).is_zero())
      throw VerificationFailure("initial configuration violates " + c.label + ": " +
                                c.poly.to_string());
  return out;
}

inline IdealPresentation assemble_constraints(const MechanismSpec& spec,
                                              const InitialConfiguration& init) {
  auto lc = labeled_constraints(spec, init);
  IdealPresentation I(make_universe(spec.variables()), std::vector<Polynomial>{});
  for (auto& c : lc) I.add(c.poly);
  return I;
}

// ---- helpers ---------------------------------------------------------------------

/// Exact square root of a polynomial over Q, if one exists.
inline std::optional<Polynomial> polynomial_sqrt(const Polynomial& f, const MonomialOrder& order) {
  const Universe& u = f.universe();
  if (f.is_zero()) return Polynomial(u);
  auto lt = f.leading_term(order);
  auto c = lt.coef.exact_sqrt();
  if (!c) return std::nullopt;
  Monomial m(u->size());
  for (std::size_t i = 0; i < u->size(); ++i) {
    if (lt.mono[i] % 2) return std::nullopt;
    if (lt.mono[i]) m.set(i, lt.mono[i] / 2);
  }
  Polynomial s = Polynomial(u, Rational(1)).mul_term(m, Rational(1)) * *c;
  const auto& sm = m;
  Polynomial q = s;
  for (std::size_t it = 0; it <= f.terms().size() + 1; ++it) {
    Polynomial r = f - q * q;
    if (r.is_zero()) return q;
    auto rt = r.leading_term(order);
    if (!order.greater(lt.mono, rt.mono)) return std::nullopt;
    Monomial d(u->size());
    for (std::size_t i = 0; i < u->size(); ++i) {
      if (rt.mono[i] < sm[i]) return std::nullopt;
      if (rt.mono[i] > sm[i]) d.set(i, rt.mono[i] - sm[i]);
    }
    q = q + Polynomial(u, Rational(1)).mul_term(d, rt.coef / (Rational(2) * *c));
  }
  return std::nullopt;
}

/// The image of I under x -> -x for the four parameters of one body; R(x) = R(-x)
/// makes it describe the same configurations.
inline IdealPresentation reflect_body(const IdealPresentation& I, const std::string& body) {
  const Universe& u = I.universe;
  std::map<std::string, Polynomial> bind;
  for (auto& n : quad_names(body))
    if (u->contains(n)) bind.emplace(n, -Polynomial::variable(u, n));
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : I.generators) out.add(g.substitute(bind, u));
  return out;
}

/// Maximum absolute value of the generators at a float assignment.
inline double residual_sample(const std::vector<Polynomial>& generators,
                              const std::map<std::string, double>& assignment) {
  double worst = 0;
  for (auto& g : generators) worst = std::max(worst, std::abs(g.evaluate(assignment)));
  return worst;
}
inline double residual_sample(const IdealPresentation& I,
                              const std::map<std::string, double>& assignment) {
  return residual_sample(I.generators, assignment);
}

// ---- analysis pipeline -----------------------------------------------------------

struct AnalysisOptions {
  GroebnerOptions gb;
  /// Overrides the essential variables listed in the mechanism description.
  std::vector<std::string> essential;
  bool verify_joints = true;
  /// Try to detect the essential variables from the final ideal.
  bool detect_essential = true;
  /// Degree bound for relations over the essential variables.
  unsigned relation_degree = 4;
};

struct JointReport {
  std::size_t index = 0;
  std::string prev;
  std::string next;
  JointFrame frame;  // local
  EulerQuadruple alpha;
  EulerQuadruple beta;
  AlphaSource alpha_source = AlphaSource::formula1;
  bool touches_fixed = false;
  ComponentSide side = ComponentSide::plus;
  IdealPresentation component;  // selected, in the joint's own variables
  IdealPresentation rejected;
};

/// variable = value, value over the essential variables.
struct LiftRelation {
  std::string variable;
  Polynomial value;
};

struct AnalysisReport {
  std::string mechanism;
  Universe universe;
  InitialConfiguration init;
  IdealPresentation original;
  std::vector<JointReport> joints;
  /// Linear relations read off the fixed-body components; value over `universe`.
  std::vector<LiftRelation> substitutions;
  IdealPresentation combined;
  IdealPresentation reduced;  // after substitution, over the surviving variables
  std::vector<std::string> splits;
  IdealPresentation final_ideal;
  GroebnerBasis final_basis;  // elimination order, non-essential block first
  int dimension = -1;
  bool zero_dimensional = false;
  std::vector<std::string> essential;
  bool essential_detected = false;
  GroebnerBasis elimination;  // degrevlex over the essential variables
  IdealPresentation elimination_generators;  // minimal subset of `elimination`
  RegularityReport regularity;
  bool complete_intersection = false;
  std::vector<LiftRelation> lift;
  std::string parametrization;  // the mechanism family
  std::map<std::string, Rational> parameters;
  std::vector<std::string> notes;
  double seconds = 0;

  std::vector<std::string> non_essential() const {
    std::vector<std::string> out;
    for (auto& n : universe->names())
      if (std::find(essential.begin(), essential.end(), n) == essential.end()) out.push_back(n);
    return out;
  }
};

namespace detail {

inline MonomialOrder elimination_order(const Universe& u, const std::vector<std::string>& keep) {
  if (keep.empty()) return MonomialOrder::degrevlex(u->size());
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < u->size(); ++i)
    if (std::find(keep.begin(), keep.end(), u->name(i)) == keep.end()) first.push_back(i);
  if (first.empty()) return MonomialOrder::degrevlex(u->size());
  return MonomialOrder::elimination(first, u->size());
}

inline std::uint32_t mask_of(const Universe& u, const std::vector<std::string>& names) {
  std::uint32_t m = 0;
  for (auto& n : names)
    if (auto i = u->find(n)) m |= 1u << *i;
  return m;
}

/// g = c x + r with c constant, r free of x and supported in `allowed`.
inline std::optional<Polynomial> linear_solution(const Polynomial& g, std::size_t x,
                                                 std::uint32_t allowed) {
  if (g.degree_in(x) != 1) return std::nullopt;
  const Universe& u = g.universe();
  Monomial mx(u->size());
  mx.set(x, 1);
  Rational c = g.coefficient(mx);
  if (c.is_zero()) return std::nullopt;
  std::vector<Term> rest;
  for (auto& t : g.terms()) {
    if (t.mono == mx) continue;
    if (t.mono[x]) return std::nullopt;
    rest.push_back(t);
  }
  Polynomial tail = Polynomial::from_terms(u, rest);
  if (tail.support() & ~allowed) return std::nullopt;
  return tail * (-c.inverse());
}

}  // namespace detail

namespace detail {

inline IdealPresentation embed(const IdealPresentation& I, const Universe& u) {
  IdealPresentation out(u, std::vector<Polynomial>{});
  for (auto& g : I.generators) out.add(g.embed(u));
  return out;
}

/// Linear relations x = value in the reduced lex basis of a component
/// living in one moving body's variables.
inline std::vector<LiftRelation> fixed_body_relations(const IdealPresentation& comp,
                                                      const Universe& full,
                                                      const GroebnerOptions& opts) {
  Universe su = sub_universe(full, comp.universe->names());
  auto G = buchberger(embed(comp, su), MonomialOrder::lex(su->size()), opts);
  std::vector<LiftRelation> out;
  for (auto& g : G.elements()) {
    if (g.total_degree() != 1 || !g.constant_term().is_zero()) continue;
    auto lt = g.leading_monomial(MonomialOrder::lex(su->size()));
    std::size_t x = 0;
    while (!lt[x]) ++x;
    auto sol = linear_solution(g, x, ~0u);
    if (sol) out.push_back({su->name(x), sol->embed(full)});
  }
  return out;
}

}  // namespace detail

/// The decomposition-driven pipeline: choose the initial component at each
/// joint, eliminate the linear relations of the fixed-body joints, split off
/// components missing the initial point, then read the essential variables,
/// the lift and the elimination ideal from the final basis.
inline AnalysisReport analyze(const MechanismSpec& spec, const InitialConfiguration& init,
                              const AnalysisOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisReport rep;
  rep.mechanism = spec.name;
  rep.parametrization = spec.family;
  rep.parameters = spec.parameters;
  rep.init = init;
  auto labeled = labeled_constraints(spec, init);
  rep.universe = make_universe(spec.variables());
  const Universe& U = rep.universe;
  rep.original = IdealPresentation(U, std::vector<Polynomial>{});
  for (auto& c : labeled) rep.original.add(c.poly);
  auto pt = init.point();
  const auto& gb = opts.gb;

  // joints
  rep.combined = IdealPresentation(U, std::vector<Polynomial>{});
  for (std::size_t j = 0; j < spec.joints.size(); ++j) {
    auto& J = spec.joints[j];
    JointReport jr;
    jr.index = j;
    jr.prev = spec.bodies[J.prev].name;
    jr.next = spec.bodies[J.next].name;
    jr.frame = local_frame(spec, init, j);
    auto d = decompose_joint(jr.frame, spec.names(J.prev), spec.names(J.next), opts.verify_joints,
                             gb);
    jr.alpha = d.alpha;
    jr.beta = d.beta;
    jr.alpha_source = d.alpha_source;
    IdealPresentation plus = d.component_plus, minus = d.component_minus;
    if (spec.is_fixed(J.prev) || spec.is_fixed(J.next)) {
      jr.touches_fixed = true;
      std::tie(plus, minus) =
          specialize_fixed_body(d, EulerQuadruple{1, 0, 0, 0}, spec.is_fixed(J.prev) ? 'a' : 'b');
    }
    auto sel = select_component(plus, minus, pt);
    jr.side = sel.side;
    jr.component = sel.ideal;
    jr.rejected = sel.side == ComponentSide::plus ? minus : plus;
    for (auto& g : jr.component.generators) rep.combined.add(g.embed(U));
    if (jr.touches_fixed)
      for (auto& r : detail::fixed_body_relations(jr.component, U, gb)) rep.substitutions.push_back(r);
    rep.joints.push_back(std::move(jr));
  }
  for (auto& c : labeled)
    if (c.label.rfind("loop", 0) == 0) rep.combined.add(c.poly);
  for (auto& c : labeled)
    if (c.label.rfind("normalization", 0) == 0) rep.combined.add(c.poly);

  // substitution
  std::map<std::string, Polynomial> bind;
  std::vector<std::string> survivors;
  std::set<std::string> solved;
  for (auto& s : rep.substitutions) solved.insert(s.variable);
  for (auto& n : U->names())
    if (!solved.count(n)) survivors.push_back(n);
  Universe R = make_universe(survivors);
  for (auto& s : rep.substitutions) bind.emplace(s.variable, s.value.embed(R));
  rep.reduced = IdealPresentation(R, std::vector<Polynomial>{});
  for (auto& g : rep.combined.generators) {
    auto s = g.substitute(bind, R);
    if (!s.is_zero()) rep.reduced.add(primitive(s));
  }

  // essential candidates for the splitting stage
  std::vector<std::string> E = !opts.essential.empty() ? opts.essential : spec.essential;
  std::vector<std::string> ER;
  for (auto& e : E)
    if (R->contains(e)) ER.push_back(e);
  std::map<std::string, Rational> ptR;
  for (auto& n : R->names()) ptR.emplace(n, pt.at(n));

  // splitting
  IdealPresentation I = rep.reduced;
  const auto drl = MonomialOrder::degrevlex(R->size());
  std::optional<LiftStructure> lift;
  for (int round = 0; round < 32; ++round) {
    auto G = buchberger(I, drl, gb);
    if (G.is_unit()) throw VerificationFailure("pipeline ideal became the unit ideal");
    bool changed = false;
    for (auto& g : G.elements()) {
      if (g.terms().size() < 2) continue;
      for (std::size_t x = 0; x < R->size() && !changed; ++x) {
        unsigned lo = ~0u;
        for (auto& t : g.terms()) lo = std::min(lo, t.mono[x]);
        if (lo == 0) continue;
        const std::string& xn = R->name(x);
        if (pt.at(xn).is_zero()) continue;
        I = saturate(I, xn, gb);
        rep.splits.push_back("saturated by " + xn + " (factor of " + g.to_string() + ")");
        changed = true;
      }
      if (changed) break;
    }
    if (changed || ER.empty()) {
      if (changed) continue;
      break;
    }
    lift = lift_structure(G, ER, ptR, opts.relation_degree, gb);
    if (lift) break;
    for (std::size_t x = 0; x < R->size() && !changed; ++x) {
      const std::string& xn = R->name(x);
      if (std::find(ER.begin(), ER.end(), xn) != ER.end()) continue;
      Polynomial xv = Polynomial::variable(R, x);
      if (relation_over(G, xv, ER, opts.relation_degree)) continue;
      auto sq = relation_over(G, xv * xv, ER, opts.relation_degree);
      if (!sq) continue;
      Polynomial tail = xv * xv - *sq;  // x^2 = tail modulo I
      auto root = polynomial_sqrt(tail, drl);
      if (!root) continue;
      Rational at = root->evaluate(pt);
      Rational sign = pt.at(xn) == at ? Rational(1) : Rational(-1);
      I.add(xv - *root * sign);
      rep.splits.push_back("square root: " + xn + " = " + (sign.sign() > 0 ? "" : "-") + "(" +
                           root->to_string() + ")");
      changed = true;
    }
    if (!changed) break;
  }
  if (!ER.empty() && !lift) {
    auto G = buchberger(I, drl, gb);
    if (ideal_dimension(G) == 1) {
      lift = branch_lift_structure(G.presentation(), ER, ptR, opts.relation_degree + 1, gb);
      if (lift) rep.splits.push_back("component through the initial point read from a local branch");
    }
  }
  if (lift) {
    IdealPresentation K(R, std::vector<Polynomial>{});
    for (auto& g : lift->elimination.elements()) K.add(g.embed(R));
    for (auto& [x, v] : lift->value) K.add(Polynomial::variable(R, x) - v.embed(R));
    I = K;
  }

  // final ideal
  rep.final_ideal = IdealPresentation(U, std::vector<Polynomial>{});
  for (auto& g : I.generators) rep.final_ideal.add(g.embed(U));
  for (auto& s : rep.substitutions)
    rep.final_ideal.add(Polynomial::variable(U, s.variable) - s.value);

  auto dg = buchberger(rep.final_ideal, MonomialOrder::degrevlex(U->size()), gb);
  rep.dimension = ideal_dimension(dg);
  rep.zero_dimensional = rep.dimension == 0;
  if (rep.zero_dimensional) rep.notes.push_back("zero-dimensional component");

  std::optional<LiftStructure> full;
  if (opts.detect_essential && rep.dimension > 0) {
    const auto& names = U->names();
    for (std::size_t k = static_cast<std::size_t>(rep.dimension); k < names.size() && !full; ++k) {
      std::vector<std::string> keep(names.end() - static_cast<std::ptrdiff_t>(k), names.end());
      full = lift_structure(dg, keep, pt, opts.relation_degree, gb);
      if (full) {
        rep.essential = keep;
        rep.essential_detected = true;
      }
    }
    if (full && !E.empty() && std::set<std::string>(E.begin(), E.end()) !=
                                  std::set<std::string>(rep.essential.begin(), rep.essential.end()))
      rep.notes.push_back("detected essential variables differ from the published set");
  }
  if (!full) {
    rep.essential = E;
    if (!E.empty()) {
      rep.notes.push_back("essential variables taken from the published set");
      full = lift_structure(dg, E, pt, opts.relation_degree, gb);
    }
  }

  if (full) {
    IdealPresentation K(U, std::vector<Polynomial>{});
    for (auto& g : full->elimination.elements()) K.add(g.embed(U));
    for (auto& [x, v] : full->value) K.add(Polynomial::variable(U, x) - v.embed(U));
    rep.final_basis = buchberger(K, detail::elimination_order(U, rep.essential), gb);
    for (auto& x : U->names())
      if (full->value.count(x)) rep.lift.push_back({x, full->value.at(x)});
    rep.elimination = full->elimination;
  } else {
    rep.final_basis = dg;
    if (!rep.essential.empty())
      rep.notes.push_back("lift incomplete: some variables are not polynomial over the essential set");
  }
  for (auto& g : rep.final_basis.elements())
    if (!g.evaluate(pt).is_zero())
      throw VerificationFailure("final basis element does not vanish at the initial point: " +
                                g.to_string());

  if (full) {
    rep.elimination_generators = minimal_generators(rep.elimination.presentation(), gb);
    rep.regularity = regularity_check(rep.elimination_generators, gb);
    rep.complete_intersection =
        rep.regularity.dimension >= 0 &&
        static_cast<int>(rep.elimination_generators.size()) == rep.regularity.codim;
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace kinalg
