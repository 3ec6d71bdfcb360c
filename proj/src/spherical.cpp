#include "kissing/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kissing {

double PointConfig::max_pairwise_inner() const {
  double best = -1.0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += points[i][k] * points[j][k];
      best = std::max(best, dot);
    }
  return best;
}

std::string PointConfig::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["points"] = points;
  return j.dump(2);
}

PointConfig PointConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PointConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.points = j.at("points").get<std::vector<std::vector<double>>>();
  for (const auto& p : cfg.points)
    if (static_cast<int>(p.size()) != cfg.n)
      throw std::invalid_argument("point dimension mismatch");
  return cfg;
}

double spherical_cos(double theta1_deg, double theta2_deg, double phi_deg) {
  double t1 = deg2rad(theta1_deg), t2 = deg2rad(theta2_deg), ph = deg2rad(phi_deg);
  return std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2) * std::cos(ph);
}

double projected_cos_bound(double z, double t0) {
  if (t0 >= 1.0) throw std::invalid_argument("projected_cos_bound: t0 must be < 1");
  if (t0 < z || z < 0.0)
    throw std::invalid_argument("projected_cos_bound: need 0 <= z <= t0");
  return (z - t0 * t0) / (1.0 - t0 * t0);
}

AngleCapacityTable AngleCapacityTable::standard() {
  AngleCapacityTable t;
  // phi_3(7) = arccos(cot 40 * cot 80); evaluated once in binary64, padded by
  // 1e-12 toward the safe side at the comparison.
  double cos_phi37 =
      (std::cos(deg2rad(40.0)) / std::sin(deg2rad(40.0))) *
      (std::cos(deg2rad(80.0)) / std::sin(deg2rad(80.0)));
  double phi37_deg = rad2deg(std::acos(cos_phi37));
  // phi_3(5) = phi_3(6) = 90 degrees, so above 90 no 5-point code exists.
  t.entries.push_back({3, 90.0, 4});
  t.entries.push_back({3, phi37_deg, 6});
  return t;
}

std::optional<int> AngleCapacityTable::capacity(int k, double omega_deg) const {
  if (k == 2) {
    if (omega_deg <= 0.0) return std::nullopt;
    return static_cast<int>(std::floor(360.0 / omega_deg));
  }
  // Safe-side padding: the query angle must clear the threshold by more than
  // the stored constant's own rounding scale.
  const double pad_cos = 1e-12;
  std::optional<int> best;
  for (const auto& e : entries) {
    if (e.k != k) continue;
    if (std::cos(deg2rad(omega_deg)) < std::cos(deg2rad(e.omega_threshold_deg)) - pad_cos)
      if (!best || e.capacity < *best) best = e.capacity;
  }
  return best;
}

int mu_upper_bound(const CodeProblem& problem, double t0,
                   const AngleCapacityTable& table) {
  if (t0 <= problem.z)
    throw std::invalid_argument("mu_upper_bound: need t0 > z");
  double c = std::clamp(projected_cos_bound(problem.z, t0), -1.0, 1.0);
  double omega_deg = rad2deg(std::acos(c));
  auto cap = table.capacity(problem.n - 1, omega_deg);
  if (!cap) throw std::runtime_error("capacity table incomplete for k=" +
                                     std::to_string(problem.n - 1));
  return *cap;
}

namespace {

PointConfig icosahedron_config() {
  PointConfig cfg;
  cfg.n = 3;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  const double a = s, b = phi * s;
  const double sign[2] = {1.0, -1.0};
  for (double s1 : sign)
    for (double s2 : sign) {
      cfg.points.push_back({0.0, s1 * a, s2 * b});
      cfg.points.push_back({s1 * a, s2 * b, 0.0});
      cfg.points.push_back({s2 * b, 0.0, s1 * a});
    }
  return cfg;
}

PointConfig cell24_config() {
  PointConfig cfg;
  cfg.n = 4;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj) {
          std::vector<double> p(4, 0.0);
          p[i] = si ? -r : r;
          p[j] = sj ? -r : r;
          cfg.points.push_back(p);
        }
  return cfg;
}

PointConfig simplex_config(int n) {
  if (n < 1) throw std::invalid_argument("simplex witness needs n >= 1");
  // n+1 unit vectors in R^n with pairwise inner products -1/n: project the
  // standard basis of R^{n+1} onto the sum-zero subspace (Helmert basis) and
  // rescale.
  PointConfig cfg;
  cfg.n = n;
  const double scale = std::sqrt((n + 1.0) / n);
  for (int i = 0; i <= n; ++i) {
    std::vector<double> v(n, 0.0);
    for (int k = 1; k <= n; ++k) {
      // Helmert row k: (1,...,1, -k, 0,...)/sqrt(k(k+1)), with k ones.
      double h;
      if (i < k)
        h = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
      else if (i == k)
        h = -static_cast<double>(k) / std::sqrt(static_cast<double>(k) * (k + 1));
      else
        h = 0.0;
      // e_i projected keeps only the Helmert component; the mean part drops.
      v[k - 1] = scale * h;
    }
    cfg.points.push_back(v);
  }
  return cfg;
}

}  // namespace

PointConfig witness_config(const std::string& name, int n) {
  if (name == "icosahedron") return icosahedron_config();
  if (name == "cell24") return cell24_config();
  if (name == "simplex") return simplex_config(n);
  throw std::invalid_argument("unknown witness configuration: " + name);
}

bool validate_code(const PointConfig& config, double z) {
  for (const auto& p : config.points) {
    if (static_cast<int>(p.size()) != config.n)
      throw std::invalid_argument("point dimension mismatch");
    double norm2 = 0.0;
    for (double x : p) norm2 += x * x;
    if (std::fabs(norm2 - 1.0) > 1e-10)
      throw std::invalid_argument("witness point not on the unit sphere");
  }
  if (config.points.size() < 2) return true;
  return config.max_pairwise_inner() <= z + 1e-12;
}

}  // namespace kissing
