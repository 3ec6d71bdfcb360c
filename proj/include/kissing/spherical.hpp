#ifndef KISSING_SPHERICAL_HPP
#define KISSING_SPHERICAL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace kissing {

constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Spherical z-code problem: points on S^{n-1} with pairwise inner products
// at most z; z = 1/2 is the kissing configuration.
struct CodeProblem {
  int n = 3;
  double z = 0.5;
  double delta_deg() const { return rad2deg(std::acos(z)); }
};

struct PointConfig {
  int n = 3;
  std::vector<std::vector<double>> points;  // unit vectors in R^n

  double max_pairwise_inner() const;
  std::string to_json() const;
  static PointConfig from_json(const std::string& text);
};

// Law of cosines on the sphere: cos of the side opposite to the vertex angle
// phi, given adjacent side lengths theta1, theta2 (all in degrees).
double spherical_cos(double theta1_deg, double theta2_deg, double phi_deg);

// Theorem-3 projection cap: (z - t0^2) / (1 - t0^2), the proven upper bound
// on cos of the equatorial distance between projected code points.
// Requires t0 >= z >= 0 and t0 < 1.
double projected_cos_bound(double z, double t0);

// Capacity table A(k, omega): the maximal size of a spherical code on
// S^{k-1} with minimal angle omega.  k = 2 is the exact circle formula;
// k = 3 carries only the two thresholds the certification chain needs.
struct AngleCapacityTable {
  struct Entry {
    int k;
    double omega_threshold_deg;  // valid for omega strictly above this
    int capacity;
  };
  std::vector<Entry> entries;

  static AngleCapacityTable standard();
  std::optional<int> capacity(int k, double omega_deg) const;
};

// Corollary-1 bound on mu(n, z, f) given the certified t0.
// Throws std::invalid_argument when t0 <= z; throws std::runtime_error with
// "capacity table incomplete" when the (n-1)-table has no applicable row.
int mu_upper_bound(const CodeProblem& problem, double t0,
                   const AngleCapacityTable& table);

// Named lower-bound witnesses: "icosahedron", "cell24", or "simplex" with
// the dimension argument.
PointConfig witness_config(const std::string& name, int n = 0);

// True iff all pairwise inner products are <= z + 1e-12.
bool validate_code(const PointConfig& config, double z);

}  // namespace kissing

#endif  // KISSING_SPHERICAL_HPP
