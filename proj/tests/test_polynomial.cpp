#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

using namespace kissing;

TEST_CASE("zero polynomial and trimming") {
  Polynomial z;
  CHECK(z.degree() == 0);
  CHECK(z.is_zero());
  CHECK(z(3.7) == 0.0);
  Polynomial trimmed({1.0, 2.0, 0.0, 0.0});
  CHECK(trimmed.degree() == 1);
  CHECK(!Polynomial({0.0, 0.0, 5.0}).is_zero());
}

TEST_CASE("Horner evaluation and derivative") {
  Polynomial p({-1.0, 0.0, 3.0});  // 3t^2 - 1
  CHECK(p(2.0) == doctest::Approx(11.0));
  CHECK(p(-0.5) == doctest::Approx(-0.25));
  Polynomial d = p.derivative();
  CHECK(d.degree() == 1);
  CHECK(d(2.0) == doctest::Approx(12.0));
}

TEST_CASE("arithmetic") {
  Polynomial a({1.0, 1.0});        // 1 + t
  Polynomial b({-1.0, 1.0});       // -1 + t
  Polynomial prod = a * b;         // t^2 - 1
  CHECK(prod.coeff(0) == doctest::Approx(-1.0));
  CHECK(prod.coeff(1) == doctest::Approx(0.0));
  CHECK(prod.coeff(2) == doctest::Approx(1.0));
  Polynomial sum = a + b;
  CHECK(sum.coeff(0) == doctest::Approx(0.0));
  CHECK(sum.coeff(1) == doctest::Approx(2.0));
  Polynomial diff = a - a;
  CHECK(diff.is_zero());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("53.76") == Rational(5376, 100));
  CHECK(parse_rational("-1/200") == Rational(-1, 200));
  CHECK(parse_rational("2431/80") == Rational(2431, 80));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-0.016") == Rational(-16, 1000));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("doubles lift to exact rationals") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(3.0) == Rational(3));
  double x = 0.1;
  CHECK(to_double(rational_from_double(x)) == x);
}

TEST_CASE("exact polynomial evaluation of the certified inputs") {
  // 9th-degree polynomial with rational coefficients used for the n = 3 chain.
  ExactPoly f(std::vector<Rational>{
      parse_rational("-1/200"), parse_rational("1/10"),
      parse_rational("-213/100"), parse_rational("-83/10"),
      parse_rational("343/40"), parse_rational("18333/400"), Rational(0),
      parse_rational("-1287/20"), Rational(0), parse_rational("2431/80")});
  CHECK(f.eval(Rational(1)) == parse_rational("10.11"));
  CHECK(f.eval(Rational(-1)) == parse_rational("2.77"));
  CHECK(f.eval(Rational(1)) + f.eval(Rational(-1)) == parse_rational("12.88"));

  // Degree-9 polynomial for the n = 4 chain; terminating decimals.
  ExactPoly g(std::vector<Rational>{
      parse_rational("-0.016"), parse_rational("-0.434"),
      parse_rational("-4.128"), parse_rational("-9.832"),
      parse_rational("16.384"), parse_rational("70.56"), Rational(0),
      parse_rational("-107.52"), Rational(0), parse_rational("53.76")});
  CHECK(g.eval(Rational(1)) == parse_rational("18.774"));
  CHECK(g.eval(Rational(-1)) == parse_rational("5.706"));
  CHECK(g.eval(Rational(1, 2)) == 0);  // exact root at 1/2
}

TEST_CASE("sturm chain counts distinct roots") {
  // (t - 1)(t + 2)t = t^3 + t^2 - 2t
  ExactPoly p(std::vector<Rational>{Rational(0), Rational(-2), Rational(1), Rational(1)});
  auto chain = sturm_chain(p);
  CHECK(sturm_count(chain, Rational(-3), Rational(3)) == 3);
  CHECK(sturm_count(chain, Rational(-3), Rational(-1)) == 1);
  CHECK(sturm_count(chain, Rational(1, 2), Rational(3)) == 1);
}
