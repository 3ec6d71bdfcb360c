#ifndef KISSING_CERTIFICATE_HPP
#define KISSING_CERTIFICATE_HPP

#include <string>
#include <vector>

#include "kissing/spherical.hpp"

namespace kissing {

// Locale-independent decimal formatting, 12 significant digits; identical
// inputs always serialize to identical bytes.
std::string format_real(double x);

struct CheckRecord {
  std::string name;
  bool pass = false;
  double margin = 0.0;
};

// Machine-readable verification chain: the polynomial, every structural
// check with its margin, the h table, and the final bound.
struct Certificate {
  CodeProblem problem;
  std::vector<double> monomial;
  std::vector<double> gegenbauer;
  std::vector<CheckRecord> checks;
  int mu = 0;
  struct HRow {
    int m = 0;
    double value = 0.0;
    std::string method;
    bool over_estimate = false;
  };
  std::vector<HRow> h;
  double h_max = 0.0;
  double bound = 0.0;
  std::string conclusion;  // empty serializes as null

  bool all_pass() const;
  std::string to_json() const;
};

}  // namespace kissing

#endif  // KISSING_CERTIFICATE_HPP
