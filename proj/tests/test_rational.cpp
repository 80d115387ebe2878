// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/error.hpp"
#include "ctdiam/exponent.hpp"
#include "ctdiam/rational.hpp"

#include <doctest.h>

using namespace ctdiam;

TEST_SUITE("rational") {
  TEST_CASE("parses integers, fractions and decimals exactly") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational(" -7/21 ") == Rational(-1, 3));
    CHECK(parse_rational("+4/6") == Rational(2, 3));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("-2.50") == Rational(-5, 2));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational(Integer("123456789012345678901234567890")));
  }

  TEST_CASE("rejects malformed input") {
    for (const char* bad : {"", "1/0", "abc", "1/2/3", "1e3", "--1", "."}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
  }

  TEST_CASE("floor, ceil and printing") {
    CHECK(floor(Rational(7, 2)) == 3);
    CHECK(ceil(Rational(7, 2)) == 4);
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(ceil(Rational(-7, 2)) == -3);
    CHECK(ceil(Rational(4)) == 4);
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_double(Rational(1, 4)) == 0.25);
  }
}

TEST_SUITE("exponent") {
  TEST_CASE("rejects negative entries") { CHECK_THROWS_AS(Exponent({1, -1}), Error); }

  TEST_CASE("arithmetic and degree") {
    const Exponent a{1, 2}, b{3, 0};
    CHECK((a + b) == Exponent{4, 2});
    CHECK((3 * a) == Exponent{3, 6});
    CHECK(a.total_degree() == 3);
    CHECK(Exponent::zero(3).is_zero());
    CHECK(a.to_string() == "(1,2)");
    CHECK_THROWS_AS(a + Exponent{1}, Error);
  }
}
