#ifndef KISSING_EXTENSION_HPP
#define KISSING_EXTENSION_HPP

#include <string>
#include <vector>

#include "kissing/orthopoly.hpp"
#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

namespace kissing {

// A polynomial validated for the monotone-extension bound: admissible
// Gegenbauer expansion, a certified root -t0 with t0 > z, f <= 0 on
// [-t0, z] and f monotone decreasing on [-1, -t0].  All h computations use
// the lower bracket end t0(), which keeps every downstream inequality on the
// safe side.
struct ExtensionPolynomial {
  int n = 3;
  double z = 0.5;
  Rational z_exact;
  Polynomial f;          // binary64 mirror for fast evaluation
  ExactPoly f_exact;     // certification substrate
  GegenbauerExpansion expansion;
  bool delsarte_mode = false;  // f <= 0 on all of [-1, z]; mu = 0, no t0
  RootBracket t0_bracket;      // bracket for t0 = -(leftmost root), unless delsarte_mode
  CertResult sign_cert;        // f <= 0 on [-t0, z]
  CertResult monotone_cert;    // f decreasing on [-1, -t0]

  double t0() const { return t0_bracket.lo; }
  double theta0_deg() const;
  double c0() const { return expansion.c.empty() ? 0.0 : expansion.c[0]; }
};

// Validation failure carries the failed check's name.
struct ExtensionError {
  std::string check;
  std::string detail;
};

// Validates f for the spherical z-code problem in dimension n.
// On failure returns false and fills `err`.
bool validate_extension(const ExactPoly& f, int n, const Rational& z,
                        ExtensionPolynomial* out, ExtensionError* err);

// Convenience wrapper that throws std::runtime_error on failure.
ExtensionPolynomial validate_extension_or_throw(const ExactPoly& f, int n,
                                                const Rational& z);

// The two certified 9th-degree polynomials, exact rational coefficients.
const ExactPoly& k3_polynomial();  // n = 3, z = 1/2 chain
const ExactPoly& k4_polynomial();  // n = 4, z = 1/2 chain

// Builds an exact polynomial from rational coefficient literals
// (constant term first), e.g. {"-1/200", "0.1", ...}.
ExactPoly poly_from_strings(const std::vector<std::string>& coeffs);

}  // namespace kissing

#endif  // KISSING_EXTENSION_HPP
