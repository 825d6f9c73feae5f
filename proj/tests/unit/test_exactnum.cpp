#include <doctest.h>

#include <stdexcept>

#include "gen.hpp"
#include "sosrank/exactnum.hpp"

using namespace sosrank;
using sosrank::testing::Gen;

TEST_CASE("rationals are canonical") {
  Rational x = make_rational(6, -4);
  CHECK(x.get_den() > 0);
  CHECK(to_string(x) == "-3/2");
  CHECK(to_string(make_rational(10, 5)) == "2");
  Gen g(1);
  for (int i = 0; i < 200; ++i) {
    Rational r = g.rational(1000, 1000) * g.rational(50, 50) + g.rational();
    CHECK(r.get_den() > 0);
    Integer c;
    mpz_gcd(c.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    CHECK((r == 0 || c == 1));
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-7/14") == make_rational(-1, 2));
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  Gen g(2);
  for (int i = 0; i < 100; ++i) {
    Rational r = g.rational(10000, 10000);
    CHECK(parse_rational(to_string(r)) == r);
  }
}

TEST_CASE("falling_factorial examples") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(make_rational(17, 3), 0) == 1);
  CHECK(falling_factorial(make_rational(1, 2), 2) == make_rational(-1, 4));
}

TEST_CASE("rising_factorial examples") {
  CHECK(rising_factorial(make_rational(3, 2), 2) == make_rational(15, 4));
  Gen g(3);
  for (int i = 0; i < 20; ++i) {
    Rational a = g.rational();
    CHECK(rising_factorial(a, 1) == a);
  }
  for (unsigned d = 1; d <= 6; ++d)
    for (unsigned j = 2 * d - 1; j <= 4 * d; ++j) CHECK(rising_factorial(Rational(2) - 2 * d, j) == 0);
}

TEST_CASE("falling and rising factorials are reflections") {
  Gen g(4);
  for (int i = 0; i < 200; ++i) {
    Rational a = g.rational(40, 12);
    auto r = static_cast<unsigned>(g.integer(0, 20));
    CHECK(falling_factorial(a, r) == sign_power(r) * rising_factorial(-a, r));
  }
}

TEST_CASE("binomial examples") {
  CHECK(binomial(5u, 2u) == 10);
  CHECK(binomial(Rational(5), 2) == 10);
  CHECK(binomial(make_rational(5, 2), 6) == make_rational(-5, 1024));
  CHECK(binomial(make_rational(-9, 7), 0) == 1);
  CHECK(binomial(3u, 5u) == 0);
}

TEST_CASE("binomial matches Pascal's triangle") {
  std::vector<std::vector<Integer>> pascal(31);
  for (unsigned n = 0; n <= 30; ++n) {
    pascal[n].assign(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    for (unsigned k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == Rational(pascal[n][k]));
      CHECK(binomial(Rational(n), k) == Rational(pascal[n][k]));
    }
  }
}

TEST_CASE("double factorial") {
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(1) == 1);
  CHECK(double_factorial(-1) == 1);
  CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
  for (long k = 0; k <= 15; ++k) {
    CHECK(double_factorial(2 * k) == pow(Rational(2), k) * factorial(k));
    if (k >= 1) CHECK(double_factorial(2 * k - 1) == factorial(2 * k) / (pow(Rational(2), k) * factorial(k)));
  }
}

TEST_CASE("snap_to_dyadic") {
  CHECK(snap_to_dyadic(0.5) == make_rational(1, 2));
  CHECK(snap_to_dyadic(3.0) == 3);
  Rational s = snap_to_dyadic(1.0 / 3.0);
  CHECK(abs(s - make_rational(1, 3)) <= Rational(1, Integer(1) << 40));
  CHECK(sign(make_rational(-2, 3)) == -1);
  CHECK(sign(Rational(0)) == 0);
}
