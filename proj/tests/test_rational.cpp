#include <doctest.h>

#include "quadtwist/rational.hpp"
#include "quadtwist/sampling.hpp"

using namespace quadtwist;

TEST_CASE("canonical form") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational(7, 1).str() == "7");
  CHECK(Rational(6, 3) == Rational(2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("strict parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK_THROWS_AS(Rational::parse("2/4"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("3/1"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("+3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("03"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("-0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("3/-4"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
}

TEST_CASE("square detection") {
  CHECK(is_square_rational(Rational(9, 4)));
  CHECK_FALSE(is_square_rational(Rational(-1)));
  CHECK_FALSE(is_square_rational(Rational(2)));
  CHECK(is_square_rational(Rational(0)));
  CHECK(is_square_rational(Rational(1)));
  CHECK(is_square_rational(Rational(16, 25)));
  CHECK_FALSE(is_square_rational(Rational(8, 25)));
  CHECK_FALSE(is_square_rational(Rational(-9, 4)));

  // For reduced p/q: square iff p >= 0 and p*q is a perfect integer square.
  Sampler s(7);
  for (int i = 0; i < 500; ++i) {
    Rational q = s.rational();
    bool direct = q.sign() >= 0 && is_perfect_square(q.num() * q.den());
    CHECK(is_square_rational(q) == direct);
    Rational sq = q * q;
    CHECK(is_square_rational(sq));
  }
}

TEST_CASE("field arithmetic") {
  Sampler s(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = s.rational(), b = s.rational(), c = s.rational();
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(0).inverse(), std::invalid_argument);
}
