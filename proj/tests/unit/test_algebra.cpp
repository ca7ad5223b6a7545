#include <catch_amalgamated.hpp>

#include "hochschild/algebra.hpp"
#include "support/generators.hpp"

using namespace hochschild;

namespace {

Matrix sigma_dual() { return Matrix::from_rows({{1, 0}, {0, -1}}); }

}  // namespace

TEST_CASE("make_algebra accepts the standard examples") {
  CHECK_NOTHROW(algebras::dual_numbers());
  CHECK_NOTHROW(algebras::matrix_algebra_2x2());
  CHECK_NOTHROW(algebras::group_algebra_z2());
  CHECK_NOTHROW(algebras::truncated_polynomial(3));
  CHECK(algebras::dual_numbers().commutative());
  CHECK_FALSE(algebras::matrix_algebra_2x2().commutative());
}

TEST_CASE("make_algebra rejects non-unital data with a witness index") {
  // e2 e2 = e1, everything else zero: no two-sided unit
  StructureTensor s(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  s[1][1][0] = 1;
  CHECK_THROWS_AS(make_algebra(s, {Rational(1), Rational(0)}), NotUnital);
  try {
    make_algebra(s, {Rational(1), Rational(0)});
  } catch (const NotUnital& e) {
    CHECK(std::string(e.what()).find("basis index 0") != std::string::npos);
  }
}

TEST_CASE("make_algebra rejects non-associative data with a witness triple") {
  // unit e0, e1 e1 = e1 + e0 is fine; make e1 e2 = e1 but e2 e1 = 0 with e2 e2 = e1
  StructureTensor s(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  for (std::size_t j = 0; j < 3; ++j) {
    s[0][j][j] = 1;
    s[j][0][j] = 1;
  }
  s[1][2][1] = 1;
  s[2][2][1] = 1;
  CHECK_THROWS_AS(make_algebra(s, {Rational(1), Rational(0), Rational(0)}), NotAssociative);
  CHECK_THROWS_AS(make_algebra(s, {Rational(1), Rational(0)}), DimensionMismatch);
}

TEST_CASE("multiply on basis examples") {
  auto dual = algebras::dual_numbers();
  CHECK(multiply(dual, {0, 1}, {0, 1}) == Vector{0, 0});
  Vector a{Rational(3, 2), -4};
  CHECK(multiply(dual, dual.unit(), a) == a);
  auto mat = algebras::matrix_algebra_2x2();
  CHECK(multiply(mat, basis_vector(4, 0), basis_vector(4, 1)) == basis_vector(4, 1));  // E11 E12 = E12
  CHECK(multiply(mat, basis_vector(4, 1), basis_vector(4, 0)) == Vector(4));           // E12 E11 = 0
  CHECK_THROWS_AS(multiply(dual, {1}, {0, 1}), DimensionMismatch);
}

TEST_CASE("multiply is symmetric for commutative structure constants") {
  hochschild::testing::Gen gen(3);
  auto a = algebras::truncated_polynomial(3);
  for (int i = 0; i < 50; ++i) {
    Vector x{gen.rational(), gen.rational(), gen.rational()}, y{gen.rational(), gen.rational(), gen.rational()};
    CHECK(multiply(a, x, y) == multiply(a, y, x));
  }
}

TEST_CASE("check_automorphism") {
  auto dual = algebras::dual_numbers();
  CHECK(check_automorphism(dual, sigma_dual()));
  CHECK(check_automorphism(dual, Matrix::identity(2)));
  // 1 -> 1, x -> 1 + x: (1+x)^2 = 1 + 2x != 0
  CHECK_FALSE(check_automorphism(dual, Matrix::from_rows({{1, 1}, {0, 1}})));
  CHECK_FALSE(check_automorphism(dual, Matrix::from_rows({{1, 0}, {0, 0}})));
  CHECK_THROWS_AS(check_automorphism(dual, Matrix::identity(3)), DimensionMismatch);
}

TEST_CASE("automorphisms are closed under products and inverses") {
  auto mat = algebras::matrix_algebra_2x2();
  // conjugation by diag(1,-1) and by the swap matrix, on E11,E12,E21,E22
  Matrix c = Matrix::from_rows({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
  Matrix s = Matrix::from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  REQUIRE(check_automorphism(mat, c));
  REQUIRE(check_automorphism(mat, s));
  CHECK(check_automorphism(mat, c * s));
  CHECK(check_automorphism(mat, s * c * s));
  CHECK(check_automorphism(mat, *inverse(c * s)));
  auto a3 = algebras::truncated_polynomial(3);
  Matrix scale = Matrix::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}});
  Matrix shear = Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}});  // x -> x + x^2
  REQUIRE(check_automorphism(a3, scale));
  REQUIRE(check_automorphism(a3, shear));
  CHECK(check_automorphism(a3, scale * shear));
  CHECK(check_automorphism(a3, *inverse(scale * shear)));
}

TEST_CASE("make_bimodule validates module axioms") {
  auto dual = algebras::dual_numbers();
  auto reg = regular_bimodule(dual);
  CHECK_NOTHROW(make_bimodule(dual, {reg.left(0), reg.left(1)}, {reg.right(0), reg.right(1)}));
  // x acting by the identity is not multiplicative (x^2 = 0)
  CHECK_THROWS_AS(make_bimodule(dual, {reg.left(0), Matrix::identity(2)}, {reg.right(0), reg.right(1)}), NotAModule);
  // Q as a bimodule via the augmentation x -> 0
  auto one = Matrix::identity(1);
  Matrix zero(1, 1);
  CHECK_NOTHROW(make_bimodule(dual, {one, zero}, {one, zero}));
}
