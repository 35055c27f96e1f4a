#pragma once

// Euler parameters a = (a0, a1, a2, a3) and the 3x4 / 4x4 matrices built
// from them. Everything is generic over the entry type so the same code
// gives polynomial identities and concrete rational or double values.

#include <array>
#include <cmath>
#include <random>

#include "kinalg/error.hpp"
#include "kinalg/num.hpp"
#include "kinalg/poly.hpp"

namespace kinalg {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational from(const Rational&, long v) { return Rational(v); }
};

template <>
struct ScalarTraits<double> {
  static double zero(double) { return 0.0; }
  static double one(double) { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double from(double, long v) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Polynomial> {
  static Polynomial zero(const Polynomial& p) { return Polynomial(p.universe()); }
  static Polynomial one(const Polynomial& p) { return Polynomial(p.universe(), Rational(1)); }
  static bool is_zero(const Polynomial& p) { return p.is_zero(); }
  static Polynomial from(const Polynomial& p, long v) {
    return Polynomial(p.universe(), Rational(v));
  }
};

template <class T>
using Quad = std::array<T, 4>;
template <class T>
using Vec3 = std::array<T, 3>;

using EulerQuadruple = Quad<Rational>;
using Vector3 = Vec3<Rational>;

/// Dense R x C matrix with value semantics.
template <class T, std::size_t R, std::size_t C>
struct Mat {
  std::array<T, R * C> a;

  T& operator()(std::size_t r, std::size_t c) { return a[r * C + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a[r * C + c]; }

  Mat<T, C, R> transpose() const {
    Mat<T, C, R> t;
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  template <std::size_t K>
  friend Mat<T, R, K> operator*(const Mat& x, const Mat<T, C, K>& y) {
    Mat<T, R, K> out;
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t k = 0; k < K; ++k) {
        T s = x(r, 0) * y(0, k);
        for (std::size_t c = 1; c < C; ++c) s = s + x(r, c) * y(c, k);
        out(r, k) = s;
      }
    return out;
  }
  friend std::array<T, R> operator*(const Mat& x, const std::array<T, C>& v) {
    std::array<T, R> out;
    for (std::size_t r = 0; r < R; ++r) {
      T s = x(r, 0) * v[0];
      for (std::size_t c = 1; c < C; ++c) s = s + x(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }
  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat out;
    for (std::size_t i = 0; i < R * C; ++i) out.a[i] = x.a[i] + y.a[i];
    return out;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat out;
    for (std::size_t i = 0; i < R * C; ++i) out.a[i] = x.a[i] - y.a[i];
    return out;
  }
  friend Mat operator*(const T& s, const Mat& x) {
    Mat out;
    for (std::size_t i = 0; i < R * C; ++i) out.a[i] = s * x.a[i];
    return out;
  }
  friend bool operator==(const Mat& x, const Mat& y) { return x.a == y.a; }

  bool is_symmetric() const requires(R == C) { return *this == transpose(); }

  static Mat identity_like(const T& proto) requires(R == C) {
    Mat m;
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c)
        m(r, c) = r == c ? ScalarTraits<T>::one(proto) : ScalarTraits<T>::zero(proto);
    return m;
  }
};

template <class T>
using Mat3 = Mat<T, 3, 3>;
template <class T>
using Mat4 = Mat<T, 4, 4>;
template <class T>
using Mat34 = Mat<T, 3, 4>;

// ---- vector helpers ---------------------------------------------------------

template <class T, std::size_t N>
T dot(const std::array<T, N>& x, const std::array<T, N>& y) {
  T s = x[0] * y[0];
  for (std::size_t i = 1; i < N; ++i) s = s + x[i] * y[i];
  return s;
}
template <class T, std::size_t N>
T norm2(const std::array<T, N>& x) {
  return dot(x, x);
}
template <class T>
Vec3<T> cross(const Vec3<T>& x, const Vec3<T>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
template <class T, std::size_t N>
std::array<T, N> operator+(const std::array<T, N>& x, const std::array<T, N>& y) {
  std::array<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + y[i];
  return r;
}
template <class T, std::size_t N>
std::array<T, N> operator-(const std::array<T, N>& x, const std::array<T, N>& y) {
  std::array<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] - y[i];
  return r;
}
template <class T, std::size_t N>
std::array<T, N> scale(const T& s, const std::array<T, N>& x) {
  std::array<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * x[i];
  return r;
}
template <class T, std::size_t N>
bool is_zero_vector(const std::array<T, N>& x) {
  for (auto& e : x)
    if (!ScalarTraits<T>::is_zero(e)) return false;
  return true;
}

template <class T>
Vec3<T> unit_vector(std::size_t i, const T& proto) {
  Vec3<T> v{ScalarTraits<T>::zero(proto), ScalarTraits<T>::zero(proto),
            ScalarTraits<T>::zero(proto)};
  v.at(i - 1) = ScalarTraits<T>::one(proto);
  return v;
}
inline Vector3 e1() { return {1, 0, 0}; }
inline Vector3 e2() { return {0, 1, 0}; }
inline Vector3 e3() { return {0, 0, 1}; }

/// (0, v)
template <class T>
Quad<T> hat(const Vec3<T>& v) {
  return {ScalarTraits<T>::zero(v[0]), v[0], v[1], v[2]};
}
template <class T>
Vec3<T> vector_part(const Quad<T>& a) {
  return {a[1], a[2], a[3]};
}
/// (a0, -a1, -a2, -a3)
template <class T>
Quad<T> conj(const Quad<T>& a) {
  return {a[0], -a[1], -a[2], -a[3]};
}

// ---- the matrices -------------------------------------------------------------

template <class T>
Mat34<T> matrix_Htilde(const Quad<T>& a) {
  const auto& [a0, a1, a2, a3] = a;
  return {{-a1, a0, -a3, a2,  //
           -a2, a3, a0, -a1,  //
           -a3, -a2, a1, a0}};
}

template <class T>
Mat34<T> matrix_H(const Quad<T>& a) {
  const auto& [a0, a1, a2, a3] = a;
  return {{-a1, a0, a3, -a2,  //
           -a2, -a3, a0, a1,  //
           -a3, a2, -a1, a0}};
}

template <class T>
Mat4<T> matrix_Ktilde(const Quad<T>& a) {
  const auto& [a0, a1, a2, a3] = a;
  return {{a0, a1, a2, a3,    //
           -a1, a0, -a3, a2,  //
           -a2, a3, a0, -a1,  //
           -a3, -a2, a1, a0}};
}

template <class T>
Mat4<T> matrix_K(const Quad<T>& a) {
  const auto& [a0, a1, a2, a3] = a;
  return {{a0, a1, a2, a3,    //
           -a1, a0, a3, -a2,  //
           -a2, -a3, a0, a1,  //
           -a3, a2, -a1, a0}};
}

/// Rotation matrix with homogeneous quadratic entries; orthogonal when |a| = 1.
template <class T>
Mat3<T> matrix_R(const Quad<T>& a) {
  const auto& [a0, a1, a2, a3] = a;
  T two = ScalarTraits<T>::from(a0, 2);
  T s0 = a0 * a0, s1 = a1 * a1, s2 = a2 * a2, s3 = a3 * a3;
  return {{s0 + s1 - s2 - s3, two * (a1 * a2 - a0 * a3), two * (a1 * a3 + a0 * a2),
           two * (a1 * a2 + a0 * a3), s0 - s1 + s2 - s3, two * (a2 * a3 - a0 * a1),
           two * (a1 * a3 - a0 * a2), two * (a2 * a3 + a0 * a1), s0 - s1 - s2 + s3}};
}

/// R(a) e^i, the i-th column (1-based).
template <class T>
Vec3<T> rotate_basis(const Quad<T>& a, std::size_t i) {
  auto R = matrix_R(a);
  return {R(0, i - 1), R(1, i - 1), R(2, i - 1)};
}

/// c = K(b)^T a, so that R(c) = R(b) R(a); -c gives the same rotation.
template <class T>
Quad<T> compose(const Quad<T>& a, const Quad<T>& b) {
  return matrix_K(b).transpose() * a;
}

/// L = Ktilde(v^) K(y^)^T.
template <class T>
Mat4<T> L_operator(const Vec3<T>& v, const Vec3<T>& y) {
  if (is_zero_vector(v) || is_zero_vector(y))
    throw InvalidArgument("L operator needs nonzero vectors");
  return matrix_Ktilde(hat(v)) * matrix_K(hat(y)).transpose();
}

// ---- identity checks ----------------------------------------------------------

/// The four algebraic identities relating R, K and Ktilde:
/// R(a)^T = R(conj a); Ktilde(a)^T b = K(b)^T a; R(K(b)^T a) = R(b) R(a);
/// Ktilde(a) K(a)^T = diag(|a|^2, R(a)).
template <class T>
bool euler_identities_check(const Quad<T>& a, const Quad<T>& b) {
  if (!(matrix_R(a).transpose() == matrix_R(conj(a)))) return false;
  if (!(matrix_Ktilde(a).transpose() * b == matrix_K(b).transpose() * a)) return false;
  if (!(matrix_R(compose(a, b)) == matrix_R(b) * matrix_R(a))) return false;
  auto KK = matrix_Ktilde(a) * matrix_K(a).transpose();
  auto R = matrix_R(a);
  T z = ScalarTraits<T>::zero(a[0]);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      T want = (i == 0 && j == 0) ? norm2(a)
               : (i == 0 || j == 0) ? z
                                    : R(i - 1, j - 1);
      if (!(KK(i, j) == want)) return false;
    }
  return true;
}

struct LOperatorReport {
  bool symmetric = false;
  bool square_law = false;
  bool commutator = false;
};

/// Symmetry and L^2 = |v|^2 |y|^2 I for L(v, y), and the commutator law
/// L L0 - L0 L = 2<u,v> K(d^) + 2<y,z> Ktilde(q^) with L0 = Ktilde(u^)^T K(z^),
/// d = y x z, q = u x v.
template <class T>
LOperatorReport L_operator_check(const Vec3<T>& v, const Vec3<T>& y, const Vec3<T>& u,
                                 const Vec3<T>& z) {
  LOperatorReport rep;
  auto L = L_operator(v, y);
  rep.symmetric = L.is_symmetric();
  rep.square_law = L * L == (norm2(v) * norm2(y)) * Mat4<T>::identity_like(v[0]);
  auto L0 = matrix_Ktilde(hat(u)).transpose() * matrix_K(hat(z));
  T two = ScalarTraits<T>::from(v[0], 2);
  auto rhs = (two * dot(u, v)) * matrix_K(hat(cross(y, z))) +
             (two * dot(y, z)) * matrix_Ktilde(hat(cross(u, v)));
  rep.commutator = L * L0 - L0 * L == rhs;
  return rep;
}

/// Eigenvector conditions for L a = |v||y| a with v, y independent:
/// (|v||y| - <v,y>) a0 + <ã, y x v> = 0 and <|y| v - |v| y, ã> = 0.
/// `vy_norm` is |v||y|, `v_norm`, `y_norm` the individual norms; callers
/// pass exact values when they are rational.
template <class T>
bool L_eigen_conditions(const Vec3<T>& v, const Vec3<T>& y, const Quad<T>& a, const T& v_norm,
                        const T& y_norm) {
  auto at = vector_part(a);
  T c1 = (v_norm * y_norm - dot(v, y)) * a[0] + dot(at, cross(y, v));
  T c2 = dot(scale(y_norm, v) - scale(v_norm, y), at);
  return ScalarTraits<T>::is_zero(c1) && ScalarTraits<T>::is_zero(c2);
}

// ---- symbolic quadruples ------------------------------------------------------

/// (p0, p1, p2, p3) as polynomial variables named prefix0..prefix3.
inline Quad<Polynomial> symbolic_quad(const Universe& u, const std::string& prefix) {
  return {Polynomial::variable(u, prefix + "0"), Polynomial::variable(u, prefix + "1"),
          Polynomial::variable(u, prefix + "2"), Polynomial::variable(u, prefix + "3")};
}
inline Vec3<Polynomial> symbolic_vec(const Universe& u, const std::string& prefix) {
  return {Polynomial::variable(u, prefix + "1"), Polynomial::variable(u, prefix + "2"),
          Polynomial::variable(u, prefix + "3")};
}
template <class T, std::size_t N>
std::array<Polynomial, N> lift(const std::array<T, N>& x, const Universe& u) {
  std::array<Polynomial, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = Polynomial(u, Rational(x[i]));
  return out;
}

template <std::size_t N>
std::array<double, N> to_double(const std::array<Rational, N>& x) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = x[i].to_double();
  return out;
}

// ---- random rational unit quadruples ------------------------------------------

/// Inverse stereographic projection of a rational point of R^3 onto S^3:
/// (1 - s, 2x, 2y, 2z) / (1 + s) with s = x^2 + y^2 + z^2.
inline EulerQuadruple unit_quad_from(const Rational& x, const Rational& y, const Rational& z) {
  Rational s = x * x + y * y + z * z;
  Rational d = (Rational(1) + s).inverse();
  return {(Rational(1) - s) * d, Rational(2) * x * d, Rational(2) * y * d, Rational(2) * z * d};
}

template <class Rng>
Rational random_small_rational(Rng& rng, long max_num = 9, long max_den = 7) {
  std::uniform_int_distribution<long> n(-max_num, max_num), d(1, max_den);
  return Rational(n(rng), d(rng));
}

template <class Rng>
EulerQuadruple random_unit_quad(Rng& rng) {
  return unit_quad_from(random_small_rational(rng), random_small_rational(rng),
                        random_small_rational(rng));
}

/// Random rational unit vector in R^3 via inverse stereographic projection of R^2.
template <class Rng>
Vector3 random_unit_vector(Rng& rng) {
  Rational x = random_small_rational(rng), y = random_small_rational(rng);
  Rational s = x * x + y * y;
  Rational d = (Rational(1) + s).inverse();
  return {Rational(2) * x * d, Rational(2) * y * d, (s - Rational(1)) * d};
}

/// Random orthonormal rational pair (eta, xi) = (R(a) e^1, R(a) e^2) for unit a.
template <class Rng>
std::pair<Vector3, Vector3> random_orthonormal_pair(Rng& rng) {
  auto a = random_unit_quad(rng);
  return {rotate_basis(a, 1), rotate_basis(a, 2)};
}

}  // namespace kinalg
