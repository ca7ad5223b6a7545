#include <catch_amalgamated.hpp>

#include "hochschild/rational.hpp"

using namespace hochschild;

TEST_CASE("parse_rational accepts integers and ratios in canonical form") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("+2") == Rational(2));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(parse_rational("-4/6").get_den() == 3);
  CHECK(parse_rational("123456789012345678901234567890/2") == Rational(mpz_class("61728394506172839450617283945")));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("/3"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("to_string round trips through parse_rational") {
  for (int p = -12; p <= 12; ++p)
    for (int q = 1; q <= 7; ++q) {
      Rational r(p, q);
      r.canonicalize();
      CHECK(parse_rational(to_string(r)) == r);
    }
}
