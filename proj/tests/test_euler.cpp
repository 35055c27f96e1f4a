#include <gtest/gtest.h>

#include <random>

#include "kinalg/euler.hpp"

using namespace kinalg;

namespace {

// Hamilton product; rotation of v is q v^ conj(q).
EulerQuadruple hamilton(const EulerQuadruple& p, const EulerQuadruple& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}
Vector3 rotate_oracle(const EulerQuadruple& a, const Vector3& v) {
  auto r = hamilton(hamilton(a, hat(v)), conj(a));
  return vector_part(r);
}
Rational det3(const Mat3<Rational>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}
Rational R(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST(MatrixR, Examples) {
  EXPECT_EQ(matrix_R(EulerQuadruple{1, 0, 0, 0}), Mat3<Rational>::identity_like(R(1)));
  EulerQuadruple a{R(1, 2), R(1, 2), R(1, 2), R(-1, 2)};
  EXPECT_EQ(rotate_basis(a, 1), (Vector3{0, 0, -1}));
  EulerQuadruple b{R(1, 2), R(1, 2), R(1, 2), R(1, 2)};
  EXPECT_EQ(rotate_basis(b, 1), (Vector3{0, 1, 0}));
}

TEST(MatrixR, AgreesWithHamiltonProduct) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    EulerQuadruple a{random_small_rational(rng), random_small_rational(rng),
                     random_small_rational(rng), random_small_rational(rng)};
    Vector3 v{random_small_rational(rng), random_small_rational(rng), random_small_rational(rng)};
    EXPECT_EQ(matrix_R(a) * v, rotate_oracle(a, v));
  }
}

TEST(MatrixR, FactorsThroughH) {
  auto u = make_universe({"a0", "a1", "a2", "a3"});
  auto a = symbolic_quad(u, "a");
  EXPECT_EQ(matrix_Htilde(a) * matrix_H(a).transpose(), matrix_R(a));
}

TEST(MatrixR, SymbolicProperties) {
  auto u = make_universe({"a0", "a1", "a2", "a3"});
  auto a = symbolic_quad(u, "a");
  auto Ra = matrix_R(a);
  auto n = norm2(a);
  EXPECT_EQ(Ra * Ra.transpose(), (n * n) * Mat3<Polynomial>::identity_like(a[0]));
  Quad<Polynomial> neg{-a[0], -a[1], -a[2], -a[3]};
  EXPECT_EQ(matrix_R(neg), Ra);
}

TEST(MatrixR, UnitDeterminant) {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_unit_quad(rng);
    ASSERT_TRUE(norm2(a).is_one());
    EXPECT_TRUE(det3(matrix_R(a)).is_one());
  }
}

TEST(EulerIdentities, Examples) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i)
    EXPECT_TRUE(euler_identities_check(random_unit_quad(rng), random_unit_quad(rng)));
  EXPECT_TRUE(euler_identities_check(EulerQuadruple{1, 0, 0, 0}, random_unit_quad(rng)));
  EXPECT_TRUE(euler_identities_check(EulerQuadruple{R(3, 5), R(4, 5), 0, 0},
                                     EulerQuadruple{R(5, 13), 0, R(12, 13), 0}));
}

TEST(EulerIdentities, Symbolic) {
  auto u = make_universe({"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3"});
  EXPECT_TRUE(euler_identities_check(symbolic_quad(u, "a"), symbolic_quad(u, "b")));
}

TEST(Compose, Examples) {
  std::mt19937 rng(8);
  auto a = random_unit_quad(rng);
  EXPECT_EQ(compose(a, EulerQuadruple{1, 0, 0, 0}), a);
  EXPECT_EQ(compose(a, conj(a)), (EulerQuadruple{norm2(a), 0, 0, 0}));
  EulerQuadruple p{R(1, 2), R(1, 2), R(1, 2), R(-1, 2)};
  EulerQuadruple q{R(1, 2), R(1, 2), R(1, 2), R(1, 2)};
  auto c = compose(p, q);
  auto Rc = matrix_R(c);
  for (std::size_t i = 1; i <= 3; ++i) {
    auto col = rotate_oracle(q, rotate_oracle(p, unit_vector<Rational>(i, R(0))));
    EXPECT_EQ((Vector3{Rc(0, i - 1), Rc(1, i - 1), Rc(2, i - 1)}), col);
  }
}

TEST(Compose, AssociativeSymbolically) {
  std::vector<std::string> names;
  for (char p : {'a', 'b', 'c'})
    for (int i = 0; i < 4; ++i) names.push_back(std::string(1, p) + std::to_string(i));
  auto u = make_universe(names);
  auto a = symbolic_quad(u, "a"), b = symbolic_quad(u, "b"), c = symbolic_quad(u, "c");
  EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
}

TEST(LOperator, Examples) {
  auto L = L_operator(e3(), e3());
  EXPECT_EQ(L * L, Mat4<Rational>::identity_like(R(1)));

  Rational m(7, 4);
  Rational d = m * m + R(1);
  Vector3 chi{0, R(-2) * m / d, (m * m - R(1)) / d};
  EulerQuadruple beta{R(1) + chi[2], -chi[1], chi[0], 0};
  EXPECT_EQ(L_operator(e3(), chi) * beta, beta);

  EXPECT_THROW(L_operator(Vector3{0, 0, 0}, e1()), InvalidArgument);
}

TEST(LOperator, RandomLaws) {
  std::mt19937 rng(21);
  auto rv = [&] {
    return Vector3{random_small_rational(rng), random_small_rational(rng),
                   random_small_rational(rng)};
  };
  for (int i = 0; i < 30; ++i) {
    Vector3 v = rv(), y = rv(), u = rv(), z = rv();
    if (is_zero_vector(v) || is_zero_vector(y)) continue;
    auto rep = L_operator_check(v, y, u, z);
    EXPECT_TRUE(rep.symmetric);
    EXPECT_TRUE(rep.square_law);
    EXPECT_TRUE(rep.commutator);
  }
}

TEST(LOperator, SymbolicLaws) {
  auto U = make_universe({"v1", "v2", "v3", "y1", "y2", "y3", "u1", "u2", "u3", "z1", "z2", "z3"});
  auto rep = L_operator_check(symbolic_vec(U, "v"), symbolic_vec(U, "y"), symbolic_vec(U, "u"),
                              symbolic_vec(U, "z"));
  EXPECT_TRUE(rep.symmetric);
  EXPECT_TRUE(rep.square_law);
  EXPECT_TRUE(rep.commutator);
}

TEST(LOperator, EigenConditions) {
  // unit v, y: L a = a exactly when both linear conditions hold
  std::mt19937 rng(4);
  for (int i = 0; i < 20; ++i) {
    auto v = random_unit_vector(rng), y = random_unit_vector(rng);
    if (v == y || v == scale(R(-1), y)) continue;
    auto L = L_operator(v, y);
    auto a = L * EulerQuadruple{1, 0, 0, 0} + EulerQuadruple{1, 0, 0, 0};
    EXPECT_EQ(L * a, a);
    EXPECT_TRUE(L_eigen_conditions(v, y, a, R(1), R(1)));
    EulerQuadruple bad{1, 0, 0, 0};
    if (!(L * bad == bad)) EXPECT_FALSE(L_eigen_conditions(v, y, bad, R(1), R(1)));
  }
}
