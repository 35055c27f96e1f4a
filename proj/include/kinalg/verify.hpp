#pragma once

#include <random>
#include <string>
#include <vector>

#include "kinalg/revolute.hpp"

namespace kinalg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The reference joint against its two components: every joint generator
/// and normalizer reduces to zero modulo each component, the components do
/// not meet, and their intersection is the joint ideal.
inline std::vector<CheckResult> verify_canonical_decomposition(const GroebnerOptions& opts = {}) {
  std::vector<CheckResult> out;
  auto c = canonical_components();
  auto U = reference_joint_universe();
  auto I = joint_ideal(JointFrame{e1(), e2(), e3()}, U, quad_names("u"), quad_names("z"));
  IdealPresentation P(U, c.k1), M(U, c.k2);
  for (auto& n : c.normalizers) {
    P.add(n);
    M.add(n);
  }
  auto o = MonomialOrder::degrevlex(U->size());
  auto GP = buchberger(P, o, opts), GM = buchberger(M, o, opts);
  std::size_t bad = 0;
  for (auto& g : I.generators) bad += !GP.contains(g) + !GM.contains(g);
  out.push_back({"joint generators lie in both components", bad == 0,
                 std::to_string(I.size()) + " generators, " + std::to_string(bad) + " failures"});
  out.push_back({"components are disjoint", is_trivial(P + M, opts), "sum is the unit ideal"});
  auto X = buchberger(intersect(P, M, opts), o, opts);
  out.push_back({"intersection equals the joint ideal", X == buchberger(I, o, opts),
                 std::to_string(X.size()) + " basis elements"});
  return out;
}

/// Euler parameter identities, the L operator laws, and the axis and plane
/// formulas with their norm closed forms on `count` random rational instances.
inline std::vector<CheckResult> verify_euler_suite(std::size_t count, unsigned seed = 1) {
  std::mt19937 rng(seed);
  auto rq = [&] {
    return EulerQuadruple{random_small_rational(rng), random_small_rational(rng),
                          random_small_rational(rng), random_small_rational(rng)};
  };
  auto rv = [&] {
    return Vector3{random_small_rational(rng), random_small_rational(rng),
                   random_small_rational(rng)};
  };
  std::size_t ident = 0, lsym = 0, lsq = 0, lcomm = 0, axis = 0, plane = 0, norms = 0;
  std::size_t lcount = 0, pcount = 0;
  for (std::size_t i = 0; i < count; ++i) {
    ident += !euler_identities_check(rq(), rq());

    Vector3 v = rv(), y = rv(), u = rv(), z = rv();
    if (!is_zero_vector(v) && !is_zero_vector(y)) {
      ++lcount;
      auto L = L_operator_check(v, y, u, z);
      lsym += !L.symmetric;
      lsq += !L.square_law;
      lcomm += !L.commutator;
    }

    auto chi = random_unit_vector(rng);
    auto beta = beta_for_axis(chi);
    axis += !(rotate_basis(beta, 3) == scale(norm2(beta), chi));
    if (chi[2] != Rational(-1) && norm2(beta) != beta_norm2_closed_form(chi)) ++norms;

    auto [eta, xi] = random_orthonormal_pair(rng);
    for (int k = 0; k < 2; ++k) {
      auto alpha = k == 0 ? alpha1_formula(eta, xi) : alpha2_formula(eta, xi);
      Rational closed = k == 0 ? alpha1_norm2_closed_form(eta, xi) : alpha2_norm2_closed_form(eta, xi);
      if (norm2(alpha) != closed) ++norms;
      if (closed.is_zero()) continue;
      ++pcount;
      plane += !(rotate_basis(alpha, 1) == scale(norm2(alpha), eta) &&
                 rotate_basis(alpha, 2) == scale(norm2(alpha), xi));
    }
  }
  auto line = [&](const char* name, std::size_t failures, std::size_t n) {
    return CheckResult{name, failures == 0,
                       std::to_string(n - failures) + "/" + std::to_string(n) + " instances"};
  };
  return {line("R, K, Ktilde identities", ident, count),
          line("L operator is symmetric", lsym, lcount),
          line("L operator square law", lsq, lcount),
          line("L operator commutator", lcomm, lcount),
          line("R(beta) e3 = |beta|^2 chi", axis, count),
          line("R(alpha) e1, e2 = |alpha|^2 (eta, xi)", plane, pcount),
          line("|alpha|^2, |beta|^2 closed forms", norms, 3 * count)};
}

}  // namespace kinalg
