#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "cmif/rational.hpp"

using cmif::Rational;

TEST_CASE("construction canonicalizes sign and gcd") {
  CHECK(Rational(3, 6).str() == "1/2");
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(4, -8).str() == "-1/2");
  CHECK(Rational(-4, -8).str() == "1/2");
  CHECK(Rational(0, 5).str() == "0/1");
  CHECK(Rational(7).str() == "7/1");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p/q and whole numbers") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-12") == Rational(-12));
  CHECK(Rational::parse("1180591620717411303424/2") == Rational(2).pow(69));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
}

TEST_CASE("arithmetic on small fractions") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(3, 5) / Rational(9, 10) == Rational(2, 3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(-7, 3).abs() == Rational(7, 3));
}

TEST_CASE("comparison agrees with cross multiplication") {
  // independent oracle: for positive denominators, a/b < c/d iff a*d < c*b
  for (long a = -3; a <= 3; ++a)
    for (long b = 1; b <= 4; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = 1; d <= 4; ++d) {
          bool expect = a * d < c * b;
          CHECK(( Rational(a, b) < Rational(c, d) ) == expect);
        }
  CHECK(cmif::rational_compare(Rational(1, 3), Rational(2, 6)) == 0);
  CHECK(cmif::rational_compare(Rational(1, 3), Rational(1, 2)) == -1);
  CHECK(cmif::rational_compare(Rational(1, 2), Rational(1, 3)) == 1);
}

TEST_CASE("pow handles negative exponents and big values") {
  CHECK(Rational(1, 2).pow(-2) == Rational(4));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(2).pow(70).str() == "1180591620717411303424/1");
  CHECK(Rational(1, 2).pow(64) * Rational(2).pow(64) == Rational(1));
  CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(7, 2).ceil() == Rational(4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(4, 2).floor() == Rational(2));
  CHECK(Rational(4, 2).ceil() == Rational(2));
}

TEST_CASE("helpers") {
  CHECK(Rational(5, 3).num_str() == "5");
  CHECK(Rational(5, 3).den_str() == "3");
  CHECK(Rational(10, 2).is_integer());
  CHECK(!Rational(1, 2).is_integer());
  CHECK(Rational(10, 2).to_long() == 5);
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-1, 9).sign() == -1);
  CHECK(cmif::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
  CHECK(cmif::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
  std::ostringstream os;
  os << Rational(-2, 4);
  CHECK(os.str() == "-1/2");
}
