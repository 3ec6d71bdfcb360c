#ifndef KISSING_PIPELINES_HPP
#define KISSING_PIPELINES_HPP

#include <string>
#include <utility>
#include <vector>

#include "kissing/certificate.hpp"
#include "kissing/extension.hpp"
#include "kissing/hbound.hpp"
#include "kissing/polysearch.hpp"

namespace kissing {

struct VerifyResult {
  Certificate certificate;
  bool concluded = false;
};

// End-to-end verification chains for the two certified polynomials.
VerifyResult verify_k3();
VerifyResult verify_k4();

// The same pipeline on a user polynomial given as exact rational coefficient
// strings (constant term first), with an optional witness configuration.
VerifyResult musin_verify(const std::vector<std::string>& coeffs, int n,
                          const std::string& z_literal,
                          const PointConfig* witness = nullptr);

struct AngleBoundResult {
  double angle_deg = 90.0;
  bool trivial = false;      // M small enough that placements always exist
  bool conclusive = false;
  double z_star = 0.0;       // largest certified inner-product cap
  double bound_at_z = 0.0;   // certified code-size bound at z_star
};

// Upper bound on the largest minimal angle phi_n(M) via bisection over z:
// the certificate "bound < M" at cap z rules out M points at separation
// arccos z.  Throws std::runtime_error("inconclusive") when no candidate
// polynomial certifies within the search budget.
AngleBoundResult angle_bound(int n, int M);

// Uniformly sampled rows (t, f(t)) over [-1, z].
std::vector<std::pair<double, double>> plot_data(const Polynomial& f, double z,
                                                 int samples);
std::string plot_csv(const std::vector<std::pair<double, double>>& rows);

}  // namespace kissing

#endif  // KISSING_PIPELINES_HPP
