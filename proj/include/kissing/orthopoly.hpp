#ifndef KISSING_ORTHOPOLY_HPP
#define KISSING_ORTHOPOLY_HPP

#include <vector>

#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

namespace kissing {

// Gegenbauer polynomial G_k^{(n)} normalized so G_k^{(n)}(1) = 1.
// For n = 3 these are the Legendre polynomials.
// Throws std::invalid_argument for n < 3 or k < 0.
Polynomial gegenbauer(int n, int k);
const ExactPoly& gegenbauer_exact(int n, int k);

struct GegenbauerExpansion {
  int n = 3;
  std::vector<double> c;  // c[k] multiplies G_k^{(n)}

  // Delsarte admissibility: c_0 > 0 and c_k >= -tol for k >= 1.
  bool admissible(double tol = 0.0) const;
};

GegenbauerExpansion to_gegenbauer(const Polynomial& p, int n);
std::vector<Rational> to_gegenbauer_exact(const ExactPoly& p, int n);
Polynomial from_gegenbauer(const GegenbauerExpansion& e);
ExactPoly from_gegenbauer_exact(int n, const std::vector<Rational>& c);

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  enum class Status { kSimple, kMultipleUncertain } status = Status::kSimple;
};

// Distinct real roots of p in [lo, hi], isolated into disjoint brackets of
// width <= tol.  Sturm-sequence counting over exact rationals (doubles are
// lifted exactly), so the count is exact for simple roots; roots that are
// also roots of gcd(p, p') come back flagged kMultipleUncertain.  A bracket
// around a root that sits exactly on lo/hi may extend past the endpoint by
// up to tol.
std::vector<RootBracket> isolate_roots(const Polynomial& p, double lo,
                                       double hi, double tol);
std::vector<RootBracket> isolate_roots_exact(const ExactPoly& p,
                                             const Rational& lo,
                                             const Rational& hi,
                                             const Rational& tol);

enum class SignClaim { kNonpositive, kNonnegative };

constexpr double kFragileMargin = 1e-7;

struct CertResult {
  bool ok = false;
  // Interior worst-case margin: min |p| over the sample points between
  // isolated roots (endpoints count only when nonzero and not abutting a
  // root bracket).  Exact zeros at the interval ends are structural contacts
  // and do not enter the margin.
  double margin = 0.0;
  bool fragile = false;  // ok but margin below kFragileMargin
};

// True iff p has the claimed sign on the closed interval [lo, hi],
// established by exact root isolation on the open interval plus endpoint
// evaluation.
CertResult certify_sign(const Polynomial& p, double lo, double hi, SignClaim s);
CertResult certify_sign_exact(const ExactPoly& p, const Rational& lo,
                              const Rational& hi, SignClaim s);

// True iff p' has no sign change in (lo, hi) and p(lo) > p(hi).
CertResult certify_monotone_decreasing(const Polynomial& p, double lo, double hi);
CertResult certify_monotone_decreasing_exact(const ExactPoly& p,
                                             const Rational& lo,
                                             const Rational& hi);

struct MaxResult {
  double value = 0.0;
  double argmax = 0.0;
};

// Global maximum of p on [lo, hi]: both endpoints plus every isolated root
// of p' in the open interval; ties break toward the smaller argument.
MaxResult max_on_interval(const Polynomial& p, double lo, double hi);

// Roots of p in [lo, hi] by recursive monotone-piece bisection in double
// arithmetic.  Fast path for polynomials with transcendental-derived
// coefficients; certified queries go through isolate_roots instead.
std::vector<double> real_roots_fast(const Polynomial& p, double lo, double hi);

}  // namespace kissing

#endif  // KISSING_ORTHOPOLY_HPP
