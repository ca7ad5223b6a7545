#include <catch_amalgamated.hpp>

#include "hochschild/deformation.hpp"
#include "support/poly_generators.hpp"

using namespace hochschild;
using hochschild::testing::Gen;

namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

Matrix standard_pi() { return Matrix::from_rows({{0, 1}, {-1, 0}}); }

PolyvectorField dx_wedge_dy() {
  PolyvectorField b(2, 2);
  b.add({0, 1}, Poly::constant(2, Rational(1)));
  return b;
}

}  // namespace

TEST_CASE("moyal_term examples") {
  auto pi = standard_pi();
  CHECK(moyal_term(0, pi) == MultiDiffCochain::multiplication(2));
  auto mu1 = moyal_term(1, pi);
  CHECK(apply_multidiff(mu1, {x(2, 0), x(2, 1)}) == Poly::constant(2, Rational(1, 2)));
  CHECK(apply_multidiff(mu1, {x(2, 0), x(2, 1)}) - apply_multidiff(mu1, {x(2, 1), x(2, 0)}) == Poly::constant(2, Rational(1)));
  auto mu2 = moyal_term(2, pi);
  CHECK(apply_multidiff(mu2, {x(2, 0) * x(2, 0), x(2, 1) * x(2, 1)}) == Poly::constant(2, Rational(1, 2)));
  CHECK(mu1 == hkr_map(dx_wedge_dy()));
  CHECK_THROWS_AS(moyal_term(1, Matrix::from_rows({{0, 1}, {1, 0}})), NotAntisymmetric);
}

TEST_CASE("associativity defects") {
  auto pi = standard_pi();
  FormalDeformation moyal = moyal_deformation(pi, 2);
  CHECK(associativity_defect(moyal, 1).is_zero());
  CHECK(associativity_defect(moyal, 2).is_zero());
  CHECK_THROWS_AS(associativity_defect(moyal, 3), OrderOutOfRange);
  CHECK_THROWS_AS(associativity_defect(moyal, 0), OrderOutOfRange);

  Gen gen(41);
  for (int t = 0; t < 10; ++t) {
    auto mu1 = testing::random_multidiff(gen, 2, 2, 2, 2);
    auto d = make_deformation(2, {mu1});
    CHECK(associativity_defect(d, 1) == -poly_differential(mu1));
  }
  MultiDiffCochain sq(2, 1);
  sq.add_term({{2}, {0}}, Poly::constant(1, Rational(1)));
  CHECK_FALSE(associativity_defect(make_deformation(1, {sq}), 1).is_zero());
}

TEST_CASE("obstructions") {
  auto pi = standard_pi();
  CHECK(obstruction(FormalDeformation(2)).is_zero());

  auto d1 = moyal_deformation(pi, 1);
  auto r2 = obstruction(d1);
  CHECK(r2 == Rational(-1, 2) * gerstenhaber_bracket(moyal_term(1, pi), moyal_term(1, pi)));
  CHECK(poly_differential(r2).is_zero());
  CHECK(poly_differential(moyal_term(2, pi)) == -r2);

  auto act = testing::quarter_turns(2);
  for (std::size_t g = 0; g < act.order(); ++g) CHECK(act_linear(act, g, r2) == r2);

  MultiDiffCochain sq(2, 1);
  sq.add_term({{2}, {0}}, Poly::constant(1, Rational(1)));
  CHECK_THROWS_AS(obstruction(make_deformation(1, {sq})), NotAssociativeToOrder);
}

TEST_CASE("obstructions are cocycles for random first-order deformations") {
  Gen gen(42);
  for (int t = 0; t < 10; ++t) {
    // mu_1 = U(X) + delta psi is a cocycle
    auto field = testing::random_polyvector(gen, 2, 2, 1);
    auto psi = testing::random_multidiff(gen, 1, 2, 1, 1);
    auto d = make_deformation(2, {hkr_map(field) + poly_differential(psi)});
    CHECK(poly_differential(obstruction(d)).is_zero());
  }
}

TEST_CASE("continuation of mu_0 gives mu_1 = 0") {
  auto res = continue_deformation(FormalDeformation(2), TruncationBounds{1, 0});
  REQUIRE(res.status == ContinuationStatus::Continued);
  CHECK(res.next->is_zero());
}

TEST_CASE("invariant Moyal continuation through order 3") {
  auto pi = standard_pi();
  auto act = testing::quarter_turns(2);
  auto d = make_deformation(2, {moyal_term(1, pi)}, act);
  for (std::size_t order = 2; order <= 3; ++order) {
    auto res = continue_deformation(d);
    REQUIRE(res.status == ContinuationStatus::Continued);
    CHECK(res.invariant_solvable);
    CHECK(is_invariant(act, *res.next));
    d = extend(d, *res.next);
    for (std::size_t j = 1; j <= order; ++j) CHECK(associativity_defect(d, j).is_zero());
  }
}

TEST_CASE("continuation with a too small window is obstructed") {
  auto d = make_deformation(2, {moyal_term(1, standard_pi())}, testing::quarter_turns(2));
  auto res = continue_deformation(d, TruncationBounds{0, 0});
  CHECK(res.status == ContinuationStatus::Obstructed);
  CHECK_FALSE(res.next);
  CHECK_FALSE(res.unconstrained_solvable);
  CHECK(res.diagnostic.find("within") != std::string::npos);
}

TEST_CASE("invariance tag is checked") {
  MultiDiffCochain xdx(2, 2);
  xdx.add_term({{1, 0}, {0, 0}}, Poly::constant(2, Rational(1)));
  CHECK_THROWS_AS(make_deformation(2, {xdx}, testing::quarter_turns(2)), InvalidGroupAction);
  CHECK_THROWS_AS(make_deformation(2, {MultiDiffCochain(1, 2)}), ArityMismatch);
}

TEST_CASE("equivalence step") {
  auto pi = standard_pi();
  auto d = moyal_deformation(pi, 1);
  auto same = equivalence_step(d, d, 0, TruncationBounds{1, 1});
  REQUIRE(same.status == EquivalenceStatus::Found);
  CHECK(same.generator->is_zero());

  // mu_1 = U(d_x ^ d_y) against the undeformed product
  auto zero = make_deformation(2, {MultiDiffCochain(2, 2)});
  auto res = equivalence_step(d, zero, 0, TruncationBounds{2, 2});
  CHECK(res.status == EquivalenceStatus::NoEquivalenceWithinBounds);
  CHECK(res.certified_nonzero);
  CHECK(res.residual_class == dx_wedge_dy());

  // round trip through a known generator
  Gen gen(43);
  for (int t = 0; t < 5; ++t) {
    auto t0 = testing::random_multidiff(gen, 1, 2, 2, 2);
    auto moved = apply_equivalence(d, t0, 0);
    auto found = equivalence_step(d, moved, 0, TruncationBounds{2, 2});
    REQUIRE(found.status == EquivalenceStatus::Found);
    CHECK(poly_differential(*found.generator) == poly_differential(t0));
  }

  auto d2 = moyal_deformation(pi, 2);
  auto moved2 = apply_equivalence(d2, testing::random_multidiff(gen, 1, 2, 2, 1), 1);
  auto found2 = equivalence_step(d2, moved2, 1, TruncationBounds{2, 1});
  CHECK(found2.status == EquivalenceStatus::Found);

  MultiDiffCochain sq(2, 2);
  sq.add_term({{2, 0}, {0, 0}}, Poly::constant(2, Rational(1)));
  CHECK_THROWS_AS(equivalence_step(make_deformation(2, {sq}), zero, 0, TruncationBounds{2, 2}), NotACocycle);
  CHECK_THROWS_AS(equivalence_step(d2, zero, 1, TruncationBounds{2, 2}), OrderOutOfRange);
}
