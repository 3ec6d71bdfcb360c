#ifndef KISSING_RATIONAL_HPP
#define KISSING_RATIONAL_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kissing {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

double to_double(const Rational& r);

// Parses "53.76", "-1/200", "3" into an exact rational.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

int sign_of(const Rational& r);

// Dense univariate polynomial over exact rationals, coefficient of t^k at
// index k.  This is the substrate for Sturm sequences and certified root
// isolation; the double-precision Polynomial mirrors it for fast evaluation.
class ExactPoly {
 public:
  ExactPoly() : c_(1, Rational(0)) {}
  explicit ExactPoly(std::vector<Rational> coeffs);

  static ExactPoly from_doubles(const std::vector<double>& coeffs);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const;

  Rational eval(const Rational& t) const;
  ExactPoly derivative() const;

  ExactPoly operator+(const ExactPoly& o) const;
  ExactPoly operator-(const ExactPoly& o) const;
  ExactPoly operator*(const ExactPoly& o) const;
  ExactPoly scaled(const Rational& s) const;

  // Divides by the positive content (gcd of numerators / lcm of denominators);
  // keeps the sign of the leading coefficient.
  ExactPoly primitive() const;

  std::vector<double> to_doubles() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Sturm chain of p (primitive-normalized remainders).  The last element is a
// gcd of (p, p'); degree > 0 there means p is not square-free.
std::vector<ExactPoly> sturm_chain(const ExactPoly& p);

int sign_variations_at(const std::vector<ExactPoly>& chain, const Rational& x);

// Number of distinct real roots of the square-free polynomial underlying
// `chain` in the half-open interval (a, b].
int sturm_count(const std::vector<ExactPoly>& chain, const Rational& a,
                const Rational& b);

}  // namespace kissing

#endif  // KISSING_RATIONAL_HPP
