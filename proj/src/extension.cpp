#include "kissing/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace kissing {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ExtensionPolynomial::theta0_deg() const {
  return std::acos(t0()) * 180.0 / kPi;
}

bool validate_extension(const ExactPoly& f, int n, const Rational& z,
                        ExtensionPolynomial* out, ExtensionError* err) {
  auto fail = [&](const std::string& check, const std::string& detail) {
    if (err != nullptr) *err = {check, detail};
    return false;
  };
  if (n < 3) return fail("dimension", "n must be >= 3");
  if (z < 0 || z >= 1) return fail("z-range", "need 0 <= z < 1");

  ExtensionPolynomial ep;
  ep.n = n;
  ep.z_exact = z;
  ep.z = to_double(z);
  ep.f_exact = f;
  ep.f = Polynomial(f.to_doubles());

  std::vector<Rational> c_exact = to_gegenbauer_exact(f, n);
  ep.expansion.n = n;
  for (const auto& ck : c_exact) ep.expansion.c.push_back(to_double(ck));
  if (c_exact.empty() || !(c_exact[0] > 0))
    return fail("admissible", "c_0 must be positive");
  for (size_t k = 1; k < c_exact.size(); ++k)
    if (c_exact[k] < 0)
      return fail("admissible",
                  "negative Gegenbauer coefficient c_" + std::to_string(k));

  // Roots of f below -z decide between the Delsarte case and the extension
  // case with a certified leftmost crossing at -t0.
  const Rational tol = rational_from_double(1e-12);
  std::vector<RootBracket> below;
  std::vector<ExactPoly> dummy_chain;
  {
    auto roots = isolate_roots_exact(f, Rational(-1), -z, tol);
    for (const auto& r : roots)
      if (rational_from_double(r.hi) < -z) below.push_back(r);
  }
  if (below.empty()) {
    CertResult whole = certify_sign_exact(f, Rational(-1), z, SignClaim::kNonpositive);
    if (!whole.ok)
      return fail("sign", "f has no root in [-1, -z) yet is not <= 0 on [-1, z]");
    ep.delsarte_mode = true;
    ep.sign_cert = whole;
    ep.monotone_cert = CertResult{true, 0.0, true};
    ep.t0_bracket = RootBracket{1.0, 1.0, RootBracket::Status::kSimple};
    *out = ep;
    return true;
  }

  const RootBracket& leftmost = below.front();
  if (leftmost.status == RootBracket::Status::kMultipleUncertain)
    return fail("t0-root", "leftmost root has uncertain multiplicity");
  ep.t0_bracket = RootBracket{-leftmost.hi, -leftmost.lo, leftmost.status};

  Rational neg_t0_hi = rational_from_double(leftmost.hi);  // = -t_lo
  ep.sign_cert = certify_sign_exact(f, neg_t0_hi, z, SignClaim::kNonpositive);
  if (!ep.sign_cert.ok)
    return fail("sign", "f not <= 0 on [-t0, z]");
  ep.monotone_cert =
      certify_monotone_decreasing_exact(f, Rational(-1), neg_t0_hi);
  if (!ep.monotone_cert.ok)
    return fail("monotone", "f not monotone decreasing on [-1, -t0]");

  *out = ep;
  return true;
}

ExtensionPolynomial validate_extension_or_throw(const ExactPoly& f, int n,
                                                const Rational& z) {
  ExtensionPolynomial ep;
  ExtensionError err;
  if (!validate_extension(f, n, z, &ep, &err))
    throw std::runtime_error("extension validation failed [" + err.check +
                             "]: " + err.detail);
  return ep;
}

const ExactPoly& k3_polynomial() {
  static const ExactPoly f = poly_from_strings(
      {"-1/200", "1/10", "-213/100", "-83/10", "343/40", "18333/400", "0",
       "-1287/20", "0", "2431/80"});
  return f;
}

const ExactPoly& k4_polynomial() {
  static const ExactPoly f = poly_from_strings(
      {"-0.016", "-0.434", "-4.128", "-9.832", "16.384", "70.56", "0",
       "-107.52", "0", "53.76"});
  return f;
}

ExactPoly poly_from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) c.push_back(parse_rational(s));
  return ExactPoly(std::move(c));
}

}  // namespace kissing
