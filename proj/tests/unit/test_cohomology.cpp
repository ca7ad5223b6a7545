#include <catch_amalgamated.hpp>

#include "hochschild/cohomology.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace hochschild;
using hochschild::testing::Gen;
using hochschild::testing::naive_rank;

namespace {

/// dim HH^n from dense matrices and the naive elimination routine.
std::size_t oracle_dim(const FiniteDimAlgebra& a, const Bimodule& n, std::size_t deg) {
  Matrix out = differential_matrix(a, n, deg).to_dense();
  std::size_t ker = out.cols() - naive_rank(out);
  std::size_t im = deg == 0 ? 0 : naive_rank(differential_matrix(a, n, deg - 1).to_dense());
  return ker - im;
}

/// dim of the center, from the equations e_i z = z e_i.
std::size_t oracle_center_dim(const FiniteDimAlgebra& a) {
  std::size_t d = a.dim();
  Matrix eqs(d * d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)  // z = e_j
      for (std::size_t k = 0; k < d; ++k) eqs(i * d + k, j) = a.c(i, j, k) - a.c(j, i, k);
  return d - naive_rank(eqs);
}

}  // namespace

TEST_CASE("differential_matrix over the ground field alternates between 0 and 1") {
  auto k = algebras::ground_field();
  auto n = regular_bimodule(k);
  for (std::size_t deg = 0; deg <= 6; ++deg) {
    Matrix m = differential_matrix(k, n, deg).to_dense();
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(m(0, 0) == Rational(deg % 2 == 0 ? 0 : 1));
  }
}

TEST_CASE("differential_matrix shapes and columns") {
  auto dual = algebras::dual_numbers();
  auto n = regular_bimodule(dual);
  SparseMatrix m1 = differential_matrix(dual, n, 1);
  CHECK(m1.rows == 8);
  CHECK(m1.cols() == 4);
  CHECK(differential_matrix(dual, n, 0).to_dense().is_zero());
  auto mat = algebras::matrix_algebra_2x2();
  auto nm = regular_bimodule(mat);
  for (std::size_t deg = 0; deg <= 2; ++deg) {
    SparseMatrix m = differential_matrix(mat, nm, deg);
    for (std::size_t j = 0; j < m.cols(); j += 7)
      CHECK(Cochain::from_vector(deg + 1, 4, 4, m.columns[j]) == differential(mat, nm, Cochain::basis(deg, 4, 4, j)));
  }
  CHECK_THROWS_AS(differential_matrix(dual, n, 8), ResourceLimit);
}

TEST_CASE("consecutive differential matrices compose to zero") {
  for (const auto& a : {algebras::dual_numbers(), algebras::group_algebra_z2(), algebras::truncated_polynomial(3)}) {
    auto n = regular_bimodule(a);
    for (std::size_t deg = 0; deg <= 2; ++deg) {
      Matrix prod = differential_matrix(a, n, deg + 1).to_dense() * differential_matrix(a, n, deg).to_dense();
      CHECK(prod.is_zero());
    }
  }
}

TEST_CASE("cohomology dimensions of the ground field") {
  auto k = algebras::ground_field();
  auto n = regular_bimodule(k);
  std::vector<std::size_t> dims;
  for (std::size_t deg = 0; deg <= 4; ++deg) dims.push_back(cohomology(k, n, deg).dim);
  CHECK(dims == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("cohomology of the dual numbers and of 2x2 matrices") {
  auto dual = algebras::dual_numbers();
  auto nd = regular_bimodule(dual);
  CHECK(cohomology(dual, nd, 0).dim == 2);
  CHECK(cohomology(dual, nd, 1).dim == 1);
  CHECK(oracle_dim(dual, nd, 1) == 1);
  auto mat = algebras::matrix_algebra_2x2();
  auto nm = regular_bimodule(mat);
  CHECK(cohomology(mat, nm, 0).dim == 1);
  CHECK(cohomology(mat, nm, 1).dim == 0);
  CHECK(oracle_dim(mat, nm, 0) == 1);
  CHECK(oracle_dim(mat, nm, 1) == 0);
}

TEST_CASE("cohomology bases satisfy their invariants and match the oracle") {
  std::vector<FiniteDimAlgebra> algs{algebras::dual_numbers(), algebras::group_algebra_z2(),
                                     algebras::truncated_polynomial(3)};
  for (const auto& a : algs) {
    auto n = regular_bimodule(a);
    for (std::size_t deg = 0; deg <= 3; ++deg) {
      CohomologySpace hs = cohomology(a, n, deg);
      for (const auto& z : hs.cocycle_basis) CHECK(differential(a, n, z).is_zero());
      for (const auto& z : hs.class_representatives) CHECK(differential(a, n, z).is_zero());
      REQUIRE(hs.coboundary_basis.size() == hs.coboundary_witnesses.size());
      for (std::size_t i = 0; i < hs.coboundary_basis.size(); ++i)
        CHECK(differential(a, n, hs.coboundary_witnesses[i]) == hs.coboundary_basis[i]);
      CHECK(hs.dim == hs.cocycle_basis.size() - hs.coboundary_basis.size());
      CHECK(hs.dim == oracle_dim(a, n, deg));
    }
  }
  // a non-regular coefficient module: Q over Q[x]/(x^3) through x -> 0
  auto a3 = algebras::truncated_polynomial(3);
  auto one = Matrix::identity(1);
  Matrix zero(1, 1);
  auto aug = make_bimodule(a3, {one, zero, zero}, {one, zero, zero});
  for (std::size_t deg = 0; deg <= 4; ++deg) CHECK(cohomology(a3, aug, deg).dim == oracle_dim(a3, aug, deg));
}

TEST_CASE("HH^0(A, A) is the center") {
  for (const auto& a : {algebras::dual_numbers(), algebras::group_algebra_z2(), algebras::truncated_polynomial(3),
                        algebras::matrix_algebra_2x2()})
    CHECK(cohomology(a, regular_bimodule(a), 0).dim == oracle_center_dim(a));
}

TEST_CASE("solve_coboundary") {
  Gen gen(21);
  auto a3 = algebras::truncated_polynomial(3);
  auto n = regular_bimodule(a3);
  for (std::size_t deg = 1; deg <= 3; ++deg) {
    Cochain psi0 = gen.cochain(deg - 1, 3, 3);
    Cochain phi = differential(a3, n, psi0);
    auto psi = solve_coboundary(a3, n, phi);
    REQUIRE(psi);
    CHECK(differential(a3, n, *psi) == phi);
  }
  auto zero = solve_coboundary(a3, n, Cochain(2, 3, 3));
  REQUIRE(zero);
  CHECK(differential(a3, n, *zero).is_zero());

  auto dual = algebras::dual_numbers();
  auto nd = regular_bimodule(dual);
  Cochain gen1(1, 2, 2);  // x -> x, 1 -> 0
  gen1.at(1, 1) = 1;
  REQUIRE(differential(dual, nd, gen1).is_zero());
  CHECK_FALSE(solve_coboundary(dual, nd, gen1));
  CHECK_THROWS_AS(solve_coboundary(dual, nd, Cochain(0, 2, 2)), DimensionMismatch);
}

TEST_CASE("solve_coboundary certifies failure by the column-space residue") {
  Gen gen(22);
  auto a = algebras::truncated_polynomial(3);
  auto n = regular_bimodule(a);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain phi = gen.cochain(2, 3, 3, 0.8);
    auto psi = solve_coboundary(a, n, phi);
    Matrix d1 = differential_matrix(a, n, 1).to_dense();
    Matrix aug(d1.rows(), d1.cols() + 1);
    for (std::size_t i = 0; i < d1.rows(); ++i) {
      for (std::size_t j = 0; j < d1.cols(); ++j) aug(i, j) = d1(i, j);
      aug(i, d1.cols()) = phi.coeffs()[i];
    }
    CHECK(psi.has_value() == (naive_rank(aug) == naive_rank(d1)));
    if (psi) CHECK(differential(a, n, *psi) == phi);
  }
}

TEST_CASE("solve_coboundary inside a constraint subspace") {
  auto dual = algebras::dual_numbers();
  auto n = regular_bimodule(dual);
  // phi = delta(nu) for nu = x in HC^0; restricting psi to span{1} must fail
  Cochain nu(0, 2, 2);
  nu.at(0, 1) = 1;
  Cochain phi = differential(dual, n, nu);  // zero, since A is commutative
  std::vector<Cochain> span_one{Cochain::basis(0, 2, 2, 0)};
  CHECK(solve_coboundary(dual, n, phi, &span_one));
  auto mat = algebras::matrix_algebra_2x2();
  auto nm = regular_bimodule(mat);
  Cochain e12(0, 4, 4);
  e12.at(0, 1) = 1;
  Cochain inner = differential(mat, nm, e12);
  std::vector<Cochain> diag{Cochain::basis(0, 4, 4, 0), Cochain::basis(0, 4, 4, 3)};
  CHECK_FALSE(solve_coboundary(mat, nm, inner, &diag));
  std::vector<Cochain> off{Cochain::basis(0, 4, 4, 1), Cochain::basis(0, 4, 4, 2)};
  auto psi = solve_coboundary(mat, nm, inner, &off);
  REQUIRE(psi);
  CHECK(differential(mat, nm, *psi) == inner);
}

TEST_CASE("derivation_quotient") {
  auto dual = algebras::dual_numbers();
  auto d = derivation_quotient(dual, regular_bimodule(dual));
  CHECK(d.derivations == 1);
  CHECK(d.inner == 0);
  auto mat = algebras::matrix_algebra_2x2();
  auto m = derivation_quotient(mat, regular_bimodule(mat));
  CHECK(m.derivations == 3);
  CHECK(m.inner == 3);
  CHECK(m.inner == mat.dim() - oracle_center_dim(mat));
  for (const auto& a : {algebras::group_algebra_z2(), algebras::truncated_polynomial(3)}) {
    auto n = regular_bimodule(a);
    auto q = derivation_quotient(a, n);
    CHECK(q.inner == 0);
    CHECK(q.derivations - q.inner == cohomology(a, n, 1).dim);
  }
}
