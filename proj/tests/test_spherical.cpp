#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kissing/spherical.hpp"

using namespace kissing;

namespace {

// Rebuild the spherical triangle as explicit vectors: A at the pole, B down
// the zero meridian, C at azimuth phi.
double law_of_cosines_oracle(double t1, double t2, double phi) {
  double b[3] = {std::sin(deg2rad(t1)), 0.0, std::cos(deg2rad(t1))};
  double c[3] = {std::sin(deg2rad(t2)) * std::cos(deg2rad(phi)),
                 std::sin(deg2rad(t2)) * std::sin(deg2rad(phi)),
                 std::cos(deg2rad(t2))};
  return b[0] * c[0] + b[1] * c[1] + b[2] * c[2];
}

std::vector<std::vector<double>> random_rotation(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (auto& row : q)
    for (auto& v : row) v = g(rng);
  // Gram-Schmidt.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += q[i][k] * q[j][k];
      for (int k = 0; k < n; ++k) q[i][k] -= dot * q[j][k];
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += q[i][k] * q[i][k];
    norm = std::sqrt(norm);
    for (int k = 0; k < n; ++k) q[i][k] /= norm;
  }
  return q;
}

PointConfig rotate(const PointConfig& cfg, const std::vector<std::vector<double>>& q) {
  PointConfig out;
  out.n = cfg.n;
  for (const auto& p : cfg.points) {
    std::vector<double> r(cfg.n, 0.0);
    for (int i = 0; i < cfg.n; ++i)
      for (int k = 0; k < cfg.n; ++k) r[i] += q[i][k] * p[k];
    out.points.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("law of cosines") {
  CHECK(spherical_cos(40.0, 70.0, 90.0) ==
        doctest::Approx(std::cos(deg2rad(40.0)) * std::cos(deg2rad(70.0))));
  CHECK(spherical_cos(55.0, 0.0, 123.0) == doctest::Approx(std::cos(deg2rad(55.0))));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> A(0.0, 180.0);
  for (int i = 0; i < 200; ++i) {
    double t1 = A(rng), t2 = A(rng), phi = A(rng);
    CHECK(std::fabs(spherical_cos(t1, t2, phi) - law_of_cosines_oracle(t1, t2, phi)) <= 1e-12);
  }
}

TEST_CASE("projection bound") {
  double c1 = projected_cos_bound(0.5, 0.5907);
  CHECK(rad2deg(std::acos(c1)) == doctest::Approx(76.582).epsilon(2e-4));
  double c2 = projected_cos_bound(0.5, 0.6058);
  CHECK(rad2deg(std::acos(c2)) > 77.87);
  CHECK(projected_cos_bound(0.3, 0.3) == doctest::Approx(0.3 / 1.3));
  CHECK(projected_cos_bound(0.0, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(projected_cos_bound(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(projected_cos_bound(0.5, 0.4), std::invalid_argument);

  // The returned cosine decreases (projected angle grows) as t0 grows.
  double prev = projected_cos_bound(0.5, 0.51);
  for (double t0 = 0.55; t0 < 0.99; t0 += 0.04) {
    double cur = projected_cos_bound(0.5, t0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("capacity table and mu bound") {
  AngleCapacityTable table = AngleCapacityTable::standard();
  CHECK(*table.capacity(2, 76.582) == 4);
  CHECK(*table.capacity(2, 90.0) == 4);
  CHECK(*table.capacity(2, 180.0) == 2);
  CHECK(*table.capacity(3, 78.0) == 6);
  CHECK(*table.capacity(3, 91.0) == 4);
  CHECK(!table.capacity(3, 77.0).has_value());
  CHECK(!table.capacity(4, 80.0).has_value());

  CodeProblem k3{3, 0.5};
  CHECK(mu_upper_bound(k3, 0.5907, table) == 4);
  CHECK(mu_upper_bound(k3, 0.9, table) == 2);
  CodeProblem k4{4, 0.5};
  CHECK(mu_upper_bound(k4, 0.60794, table) == 6);
  CHECK(mu_upper_bound(k4, 0.6058, table) == 6);
  CHECK_THROWS_AS(mu_upper_bound(k4, 0.4, table), std::invalid_argument);
  CodeProblem k5{5, 0.5};
  CHECK_THROWS_AS(mu_upper_bound(k5, 0.7, table), std::runtime_error);

  // mu never grows as t0 grows.
  int prev = mu_upper_bound(k4, 0.607, table);
  for (double t0 = 0.63; t0 < 0.99; t0 += 0.03) {
    int cur = mu_upper_bound(k4, t0, table);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("witness configurations") {
  PointConfig cell24 = witness_config("cell24");
  REQUIRE(cell24.points.size() == 24);
  int pairs = 0;
  for (size_t i = 0; i < 24; ++i)
    for (size_t j = i + 1; j < 24; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 4; ++k) dot += cell24.points[i][k] * cell24.points[j][k];
      ++pairs;
      bool known = std::fabs(dot + 1) < 1e-12 || std::fabs(dot + 0.5) < 1e-12 ||
                   std::fabs(dot) < 1e-12 || std::fabs(dot - 0.5) < 1e-12;
      CHECK(known);
    }
  CHECK(pairs == 276);
  CHECK(cell24.max_pairwise_inner() == doctest::Approx(0.5).epsilon(1e-14));

  PointConfig ico = witness_config("icosahedron");
  REQUIRE(ico.points.size() == 12);
  CHECK(ico.max_pairwise_inner() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));

  for (int n : {2, 3, 4, 7}) {
    PointConfig s = witness_config("simplex", n);
    REQUIRE(s.points.size() == static_cast<size_t>(n + 1));
    for (size_t i = 0; i < s.points.size(); ++i)
      for (size_t j = i + 1; j < s.points.size(); ++j) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += s.points[i][k] * s.points[j][k];
        CHECK(dot == doctest::Approx(-1.0 / n).epsilon(1e-12));
      }
  }
  CHECK_THROWS_AS(witness_config("dodecahedron"), std::invalid_argument);
}

TEST_CASE("code validation") {
  CHECK(validate_code(witness_config("cell24"), 0.5));
  CHECK(!validate_code(witness_config("icosahedron"), 0.4));
  CHECK(validate_code(witness_config("icosahedron"), 0.5));
  PointConfig single{3, {{0.0, 0.0, 1.0}}};
  CHECK(validate_code(single, 0.0));
}

TEST_CASE("validation is rotation invariant") {
  std::mt19937 rng(2024);
  PointConfig ico = witness_config("icosahedron");
  double z_tight = 1.0 / std::sqrt(5.0) + 1e-9;
  for (int trial = 0; trial < 20; ++trial) {
    auto q = random_rotation(rng, 3);
    PointConfig rot = rotate(ico, q);
    CHECK(validate_code(rot, z_tight));
    CHECK(!validate_code(rot, 0.44));
  }
}

TEST_CASE("point config json roundtrip") {
  PointConfig ico = witness_config("icosahedron");
  PointConfig back = PointConfig::from_json(ico.to_json());
  REQUIRE(back.points.size() == ico.points.size());
  CHECK(back.n == 3);
  for (size_t i = 0; i < ico.points.size(); ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(back.points[i][k] == doctest::Approx(ico.points[i][k]).epsilon(1e-15));
}
