#include <catch_amalgamated.hpp>

#include "hochschild/multidiff.hpp"
#include "support/poly_generators.hpp"

using namespace hochschild;
using hochschild::testing::Gen;

namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly one(std::size_t n) { return Poly::constant(n, Rational(1)); }

/// delta phi evaluated pointwise from the defining formula.
Poly pointwise_differential(const MultiDiffCochain& phi, const std::vector<Poly>& f) {
  const std::size_t k = phi.degree();
  std::vector<Poly> tail(f.begin() + 1, f.end()), head(f.begin(), f.end() - 1);
  Poly out = f[0] * apply_multidiff(phi, tail);
  Poly last = apply_multidiff(phi, head) * f[k];
  out += (k % 2 == 0) ? -last : last;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Poly> args;
    for (std::size_t s = 0; s < k + 1; ++s) {
      if (s == i) {
        args.push_back(f[i] * f[i + 1]);
        ++s;
      } else {
        args.push_back(f[s]);
      }
    }
    Poly v = apply_multidiff(phi, args);
    out += (i % 2 == 0) ? -v : v;
  }
  return out;
}

}  // namespace

TEST_CASE("apply_multidiff examples") {
  MultiDiffCochain phi(2, 2);
  phi.add_term({{1, 0}, {0, 1}}, one(2));
  CHECK(apply_multidiff(phi, {x(2, 0) * x(2, 0), x(2, 1)}) == Rational(2) * x(2, 0));
  CHECK(apply_multidiff(MultiDiffCochain(2, 2), {x(2, 0), x(2, 1)}).is_zero());

  MultiDiffCochain e(1, 1);
  e.add_term({{1}}, x(1, 0));
  Poly x3 = x(1, 0) * x(1, 0) * x(1, 0);
  CHECK(apply_multidiff(e, {x3}) == Rational(3) * x3);
}

TEST_CASE("apply_multidiff checks arity and variables") {
  MultiDiffCochain phi(2, 2);
  phi.add_term({{1, 0}, {0, 1}}, one(2));
  CHECK_THROWS_AS(apply_multidiff(phi, {x(2, 0)}), ArityMismatch);
  CHECK_THROWS_AS(apply_multidiff(phi, {x(3, 0), x(3, 1)}), VariableCountMismatch);
  CHECK_THROWS_AS(phi.add_term({{1, 0}}, one(2)), ArityMismatch);
}

TEST_CASE("terms are normalized") {
  MultiDiffCochain phi(1, 1);
  phi.add_term({{1}}, x(1, 0));
  phi.add_term({{1}}, -x(1, 0));
  CHECK(phi.is_zero());
  phi.add_term({{2}}, x(1, 0) * x(1, 0));
  CHECK(phi.max_order() == 2);
  CHECK(phi.coefficient_degree() == 2);
}

TEST_CASE("poly_differential examples") {
  MultiDiffCochain dx(1, 1);
  dx.add_term({{1}}, one(1));
  CHECK(poly_differential(dx).is_zero());

  CHECK(poly_differential(MultiDiffCochain::element(x(1, 0) * x(1, 0))).is_zero());

  MultiDiffCochain dxx(1, 1);
  dxx.add_term({{2}}, one(1));
  MultiDiffCochain expected(2, 1);
  expected.add_term({{1}, {1}}, Poly::constant(1, Rational(-2)));
  CHECK(poly_differential(dxx) == expected);
}

TEST_CASE("poly_differential agrees with the pointwise formula") {
  Gen gen(21);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = gen.integer(1, 3), k = gen.integer(0, 3);
    auto phi = testing::random_multidiff(gen, k, n, 2, 2);
    auto dphi = poly_differential(phi);
    std::vector<Poly> f;
    for (std::size_t s = 0; s <= k; ++s) f.push_back(testing::random_poly(gen, n, 3, 0.5));
    CHECK(apply_multidiff(dphi, f) == pointwise_differential(phi, f));
  }
}

TEST_CASE("poly_differential squares to zero") {
  Gen gen(22);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = gen.integer(1, 3), k = gen.integer(0, 3);
    auto phi = testing::random_multidiff(gen, k, n, 2, 2);
    CHECK(poly_differential(poly_differential(phi)).is_zero());
  }
}

TEST_CASE("sign pin: delta phi = -[phi, mu0] on symbols") {
  Gen gen(23);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = gen.integer(1, 2), k = gen.integer(0, 3);
    auto phi = testing::random_multidiff(gen, k, n, 2, 2);
    CHECK(poly_differential(phi) == -gerstenhaber_bracket(phi, MultiDiffCochain::multiplication(n)));
  }
}

TEST_CASE("partial composition evaluates as substitution") {
  Gen gen(24);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = gen.integer(1, 2), p = gen.integer(1, 3), q = gen.integer(0, 2);
    auto phi = testing::random_multidiff(gen, p, n, 2, 1);
    auto psi = testing::random_multidiff(gen, q, n, 2, 1);
    std::vector<Poly> f;
    for (std::size_t s = 0; s < p + q - 1; ++s) f.push_back(testing::random_poly(gen, n, 3, 0.5));
    std::size_t slot = gen.integer(1, static_cast<int>(p));
    std::vector<Poly> inner(f.begin() + (slot - 1), f.begin() + (slot - 1 + q));
    std::vector<Poly> outer(f.begin(), f.begin() + (slot - 1));
    outer.push_back(apply_multidiff(psi, inner));
    outer.insert(outer.end(), f.begin() + (slot - 1 + q), f.end());
    CHECK(apply_multidiff(partial_composition(phi, psi, slot), f) == apply_multidiff(phi, outer));
  }
}

TEST_CASE("bracket: graded antisymmetry and Jacobi") {
  Gen gen(25);
  auto parity = [](std::size_t a, std::size_t b) { return (a % 2 == 0) && (b % 2 == 0); };
  for (int t = 0; t < 10; ++t) {
    std::size_t p = gen.integer(1, 2), q = gen.integer(1, 2), r = gen.integer(1, 2);
    auto a = testing::random_multidiff(gen, p, 1, 2, 2, 2);
    auto b = testing::random_multidiff(gen, q, 1, 2, 2, 2);
    auto c = testing::random_multidiff(gen, r, 1, 2, 2, 2);
    auto ab = gerstenhaber_bracket(a, b), ba = gerstenhaber_bracket(b, a);
    CHECK(ab == (parity(p, q) ? ba : -ba));
    // [a,[b,c]] = [[a,b],c] + (-1)^{(p-1)(q-1)} [b,[a,c]]
    auto lhs = gerstenhaber_bracket(a, gerstenhaber_bracket(b, c));
    auto t2 = gerstenhaber_bracket(b, gerstenhaber_bracket(a, c));
    auto rhs = gerstenhaber_bracket(gerstenhaber_bracket(a, b), c) + (parity(p, q) ? -t2 : t2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("[mu0, mu0] = 0") {
  auto mu = MultiDiffCochain::multiplication(2);
  CHECK(gerstenhaber_bracket(mu, mu).is_zero());
}

TEST_CASE("skew_symmetrize examples") {
  MultiDiffCochain xy(2, 2);
  xy.add_term({{1, 0}, {0, 1}}, one(2));
  MultiDiffCochain expected(2, 2);
  expected.add_term({{1, 0}, {0, 1}}, Poly::constant(2, Rational(1, 2)));
  expected.add_term({{0, 1}, {1, 0}}, Poly::constant(2, Rational(-1, 2)));
  CHECK(skew_symmetrize(xy) == expected);

  MultiDiffCochain xx(2, 2);
  xx.add_term({{1, 0}, {1, 0}}, one(2));
  CHECK(skew_symmetrize(xx).is_zero());

  Gen gen(26);
  for (int t = 0; t < 10; ++t) {
    auto phi = testing::random_multidiff(gen, gen.integer(0, 3), 2, 2, 1);
    CHECK(skew_symmetrize(skew_symmetrize(phi)) == skew_symmetrize(phi));
  }
  CHECK_THROWS_AS(skew_symmetrize(MultiDiffCochain(7, 1)), ResourceLimit);
}

TEST_CASE("skew-symmetrization kills coboundaries") {
  Gen gen(27);
  for (int t = 0; t < 20; ++t) {
    auto psi = testing::random_multidiff(gen, gen.integer(0, 2), 2, 2, 2);
    CHECK(skew_symmetrize(poly_differential(psi)).is_zero());
  }
}

TEST_CASE("linear action on cochains is equivariant for evaluation and commutes with delta") {
  auto act = testing::quarter_turns(2);
  Gen gen(28);
  for (int t = 0; t < 10; ++t) {
    auto phi = testing::random_multidiff(gen, 2, 2, 2, 2);
    std::vector<Poly> f{testing::random_poly(gen, 2, 2, 0.4), testing::random_poly(gen, 2, 2, 0.4)};
    for (std::size_t g = 0; g < act.order(); ++g) {
      auto gphi = act_linear(act, g, phi);
      std::size_t ginv = 0;
      while (act.product(g, ginv) != act.identity_index()) ++ginv;
      std::vector<Poly> pulled{act_linear(act, ginv, f[0]), act_linear(act, ginv, f[1])};
      CHECK(apply_multidiff(gphi, f) == act_linear(act, g, apply_multidiff(phi, pulled)));
      CHECK(poly_differential(gphi) == act_linear(act, g, poly_differential(phi)));
    }
    CHECK(is_invariant(act, average_linear(act, phi)));
  }
}

TEST_CASE("multiplication cochain is invariant") {
  auto act = testing::quarter_turns(3);
  CHECK(is_invariant(act, MultiDiffCochain::multiplication(3)));
}
