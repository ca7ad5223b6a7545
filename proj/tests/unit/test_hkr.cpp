#include <catch_amalgamated.hpp>

#include "hochschild/cochain.hpp"
#include "hochschild/hkr.hpp"
#include "hochschild/polyvector.hpp"
#include "hochschild/truncation.hpp"
#include "support/poly_generators.hpp"

using namespace hochschild;
using hochschild::testing::Gen;

namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly cst(std::size_t n, const Rational& q) { return Poly::constant(n, q); }

PolyvectorField dx_wedge_dy() {
  PolyvectorField b(2, 2);
  b.add({0, 1}, cst(2, 1));
  return b;
}

}  // namespace

TEST_CASE("polyvector keys are sorted with sign") {
  PolyvectorField b(2, 3);
  b.add({2, 0}, cst(3, 1));
  CHECK(b.component({0, 2}) == cst(3, -1));
  b.add({1, 1}, cst(3, 5));
  CHECK(b.components().size() == 1);
  CHECK_THROWS_AS(b.add({0}, cst(3, 1)), ArityMismatch);
}

TEST_CASE("wedge is graded commutative") {
  Gen gen(31);
  for (int t = 0; t < 10; ++t) {
    std::size_t p = gen.integer(0, 2), q = gen.integer(0, 2);
    auto a = testing::random_polyvector(gen, p, 3, 1), b = testing::random_polyvector(gen, q, 3, 1);
    auto ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((p * q) % 2 == 0 ? ba : Rational(-1) * ba));
  }
}

TEST_CASE("hkr_map examples") {
  // X = d_x
  auto dx = PolyvectorField::vector_field({cst(2, 1), Poly(2)});
  Poly f = x(2, 0) * x(2, 0) * x(2, 1);
  CHECK(apply_multidiff(hkr_map(dx), {f}) == derivative(f, {1, 0}));

  // X = d_x ^ d_y
  Gen gen(32);
  for (int t = 0; t < 10; ++t) {
    Poly a = testing::random_poly(gen, 2, 3, 0.4), b = testing::random_poly(gen, 2, 3, 0.4);
    Poly expected = Rational(1, 2) * (derivative(a, {1, 0}) * derivative(b, {0, 1}) - derivative(a, {0, 1}) * derivative(b, {1, 0}));
    CHECK(apply_multidiff(hkr_map(dx_wedge_dy()), {a, b}) == expected);
  }

  // degree 0 is multiplication by p
  Poly p = x(2, 0) + cst(2, 3);
  auto u = hkr_map(PolyvectorField::function(p));
  CHECK(u.degree() == 0);
  CHECK(apply_multidiff(u, std::vector<Poly>{}) == p);
}

TEST_CASE("hkr_map of a wedge of vector fields is the signed permutation sum") {
  Gen gen(33);
  for (int t = 0; t < 10; ++t) {
    std::vector<PolyvectorField> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(testing::random_polyvector(gen, 1, 3, 1, 0.3));
    auto w = wedge(wedge(xs[0], xs[1]), xs[2]);
    std::vector<Poly> f;
    for (int i = 0; i < 3; ++i) f.push_back(testing::random_poly(gen, 3, 2, 0.4));
    std::vector<std::size_t> perm{0, 1, 2};
    Poly expected(3);
    do {
      int inv = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2]);
      Poly term = cst(3, 1);
      for (std::size_t s = 0; s < 3; ++s) term = term * apply_multidiff(hkr_map(xs[perm[s]]), {f[s]});
      expected += (inv % 2 == 0) ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(apply_multidiff(hkr_map(w), f) == Rational(1, 6) * expected);
  }
}

TEST_CASE("hkr_map gives cocycles and is injective") {
  Gen gen(34);
  for (int t = 0; t < 20; ++t) {
    auto field = testing::random_polyvector(gen, gen.integer(0, 3), 3, 2);
    auto u = hkr_map(field);
    CHECK(poly_differential(u).is_zero());
    CHECK(u.is_zero() == field.is_zero());
    CHECK(polyvector_from_skew(skew_symmetrize(u)) == field);
  }
}

TEST_CASE("linear action on polyvectors") {
  auto act = testing::quarter_turns(2);
  // determinant one rotations fix d_x ^ d_y
  for (std::size_t g = 0; g < act.order(); ++g) CHECK(act_linear(act, g, dx_wedge_dy()) == dx_wedge_dy());
  Gen gen(35);
  auto act3 = testing::quarter_turns(3);
  for (int t = 0; t < 10; ++t) {
    auto a = testing::random_polyvector(gen, 1, 3, 1), b = testing::random_polyvector(gen, gen.integer(0, 2), 3, 1);
    for (std::size_t g = 0; g < act3.order(); ++g) {
      CHECK(act_linear(act3, g, wedge(a, b)) == wedge(act_linear(act3, g, a), act_linear(act3, g, b)));
      CHECK(act_linear(act3, g, hkr_map(b)) == hkr_map(act_linear(act3, g, b)));
    }
  }
}

TEST_CASE("vector field action is conjugation of the derivation") {
  auto act = testing::quarter_turns(2);
  Gen gen(36);
  auto field = testing::random_polyvector(gen, 1, 2, 2, 0.2);
  Poly f = testing::random_poly(gen, 2, 3, 0.3);
  for (std::size_t g = 0; g < act.order(); ++g) {
    std::size_t ginv = 0;
    while (act.product(g, ginv) != 0) ++ginv;
    Poly lhs = apply_multidiff(hkr_map(act_linear(act, g, field)), {f});
    Poly rhs = act_linear(act, g, apply_multidiff(hkr_map(field), {act_linear(act, ginv, f)}));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("circle averaging") {
  auto dx = PolyvectorField::vector_field({cst(2, 1), Poly(2)});
  CHECK(circle_average_polyvector(dx, 0, 1).is_zero());
  CHECK(circle_average_polyvector(dx_wedge_dy(), 0, 1) == dx_wedge_dy());

  auto xdx = PolyvectorField::vector_field({x(2, 0), Poly(2)});
  auto euler = PolyvectorField::vector_field({x(2, 0), x(2, 1)});
  CHECK(circle_average_polyvector(xdx, 0, 1) == Rational(1, 2) * euler);

  Gen gen(37);
  Matrix r = plane_rotation(3, 0, 1, Rational(3, 5), Rational(4, 5));
  Matrix rinv = *inverse(r);
  for (int t = 0; t < 10; ++t) {
    auto a = circle_average_polyvector(testing::random_polyvector(gen, gen.integer(0, 2), 3, 2), 0, 1);
    CHECK(circle_average_polyvector(a, 0, 1) == a);
    CHECK(act_matrix(r, rinv, a) == a);
    auto b = circle_average_polyvector(testing::random_polyvector(gen, 1, 3, 1), 0, 1);
    CHECK(circle_average_polyvector(wedge(a, b), 0, 1) == wedge(a, b));
  }
  CHECK_THROWS_AS(circle_average_polyvector(dx, 1, 1), DimensionMismatch);
}

TEST_CASE("hkr_decompose examples") {
  auto u = hkr_map(dx_wedge_dy());
  auto d = hkr_decompose(u);
  CHECK(d.field == dx_wedge_dy());
  CHECK(d.psi.is_zero());

  MultiDiffCochain notcocycle(1, 1);
  notcocycle.add_term({{2}}, Poly::constant(1, Rational(1)));
  CHECK_THROWS_AS(hkr_decompose(notcocycle), NotACocycle);
}

TEST_CASE("hkr_decompose round trip") {
  Gen gen(38);
  SolverCache cache;
  TruncationBounds b{1, 2};
  for (int t = 0; t < 12; ++t) {
    std::size_t n = gen.integer(1, 2), k = gen.integer(1, 3);
    auto field = testing::random_polyvector(gen, k, n, 2);
    auto psi0 = testing::random_multidiff(gen, k - 1, n, 1, 2);
    auto phi = hkr_map(field) + poly_differential(psi0);
    auto d = hkr_decompose(phi, b, cache);
    CHECK(d.field == field);
    CHECK(hkr_map(d.field) + poly_differential(d.psi) == phi);
  }
}

TEST_CASE("hkr_decompose retries at doubled bounds and then fails loudly") {
  MultiDiffCochain psi0(1, 1);
  psi0.add_term({{2}}, Poly::constant(1, Rational(1)));
  auto phi = poly_differential(psi0);
  auto d = hkr_decompose(phi, TruncationBounds{1, 0});
  CHECK(d.bounds == TruncationBounds{2, 1});
  CHECK(poly_differential(d.psi) == phi);

  MultiDiffCochain psi1(1, 1);
  psi1.add_term({{5}}, Poly::constant(1, Rational(1)));
  CHECK_THROWS_AS(hkr_decompose(poly_differential(psi1), TruncationBounds{1, 0}), NoSolutionWithinBounds);
}

TEST_CASE("invariant truncated solve") {
  auto act = testing::quarter_turns(2);
  SolverCache cache(&act);
  Gen gen(39);
  for (int t = 0; t < 5; ++t) {
    auto psi0 = average_linear(act, testing::random_multidiff(gen, 1, 2, 2, 2));
    auto sol = solve_with_retry(poly_differential(psi0), TruncationBounds{2, 2}, cache);
    REQUIRE(sol);
    CHECK(is_invariant(act, sol->first));
    CHECK(poly_differential(sol->first) == poly_differential(psi0));
  }
}

TEST_CASE("truncated polynomial algebra matches the one-variable example") {
  CHECK(truncated_polynomial_algebra(1, 3) == algebras::truncated_polynomial(3));
  CHECK(truncated_polynomial_algebra(2, 2).dim() == 3);
}

TEST_CASE("cross-backend: differential and bracket agree on Q[x]/(x^3)") {
  const unsigned bound = 3;
  auto a = truncated_polynomial_algebra(1, bound);
  auto nmod = regular_bimodule(a);
  // every filtration-preserving monomial cochain of degree <= 2 with orders <= 2
  std::vector<MultiDiffCochain> basis;
  for (std::size_t k = 0; k <= 2; ++k)
    for (const auto& c : truncated_basis(1, k, TruncationBounds{2, 2}))
      if (preserves_filtration(c)) basis.push_back(c);
  for (const auto& phi : basis)
    CHECK(to_truncated_cochain(poly_differential(phi), bound) == differential(a, nmod, to_truncated_cochain(phi, bound)));
  for (const auto& phi : basis)
    for (const auto& psi : basis) {
      if (phi.degree() + psi.degree() == 0) continue;
      CHECK(to_truncated_cochain(gerstenhaber_bracket(phi, psi), bound) ==
            gerstenhaber_bracket(to_truncated_cochain(phi, bound), to_truncated_cochain(psi, bound)));
    }
  MultiDiffCochain bad(1, 1);
  bad.add_term({{1}}, Poly::constant(1, Rational(1)));
  CHECK_FALSE(preserves_filtration(bad));
  CHECK_THROWS_AS(to_truncated_cochain(bad, bound), DimensionMismatch);
}
