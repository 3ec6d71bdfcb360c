#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kissing/extension.hpp"
#include "kissing/orthopoly.hpp"

using namespace kissing;

namespace {

Polynomial k3_double() { return Polynomial(k3_polynomial().to_doubles()); }
Polynomial k4_double() { return Polynomial(k4_polynomial().to_doubles()); }

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int K, std::vector<double>& x, std::vector<double>& w) {
  x.resize(K);
  w.resize(K);
  for (int i = 0; i < K; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (K + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= K; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = K * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= K; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = K * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

std::vector<double> random_unit_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : v) {
      c = g(rng);
      norm += c * c;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

}  // namespace

TEST_CASE("gegenbauer recurrence examples") {
  Polynomial p2 = gegenbauer(3, 2);
  CHECK(p2.coeff(2) == doctest::Approx(1.5));
  CHECK(p2.coeff(0) == doctest::Approx(-0.5));
  CHECK(p2.coeff(1) == doctest::Approx(0.0));

  for (int n = 3; n <= 7; ++n) {
    Polynomial g0 = gegenbauer(n, 0);
    CHECK(g0.degree() == 0);
    CHECK(g0.coeff(0) == doctest::Approx(1.0));
  }

  // U_9 = (256t^9 - 512t^7 + 336t^5 - 80t^3 + 5t)/5
  Polynomial u9 = gegenbauer(4, 9);
  CHECK(u9.coeff(9) == doctest::Approx(256.0 / 5));
  CHECK(u9.coeff(7) == doctest::Approx(-512.0 / 5));
  CHECK(u9.coeff(5) == doctest::Approx(336.0 / 5));
  CHECK(u9.coeff(3) == doctest::Approx(-80.0 / 5));
  CHECK(u9.coeff(1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(gegenbauer(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(gegenbauer(3, -1), std::invalid_argument);
}

TEST_CASE("normalization G_k(1) = 1 for n in 3..10, k in 0..12") {
  for (int n = 3; n <= 10; ++n)
    for (int k = 0; k <= 12; ++k)
      CHECK(std::fabs(gegenbauer(n, k)(1.0) - 1.0) <= 1e-12);
}

TEST_CASE("numeric orthogonality under the (1-t^2)^((n-3)/2) weight") {
  // n = 3: weight 1, Gauss-Legendre.
  std::vector<double> x, w;
  gauss_legendre(24, x, w);
  for (int j = 0; j <= 9; ++j)
    for (int k = j + 1; k <= 9; ++k) {
      Polynomial pj = gegenbauer(3, j), pk = gegenbauer(3, k);
      double acc = 0.0;
      for (size_t i = 0; i < x.size(); ++i) acc += w[i] * pj(x[i]) * pk(x[i]);
      CHECK(std::fabs(acc) <= 1e-8);
    }
  // n = 4: weight sqrt(1-t^2), Gauss-Chebyshev second kind.
  const int K = 24;
  for (int j = 0; j <= 9; ++j)
    for (int k = j + 1; k <= 9; ++k) {
      Polynomial pj = gegenbauer(4, j), pk = gegenbauer(4, k);
      double acc = 0.0;
      for (int i = 1; i <= K; ++i) {
        double th = M_PI * i / (K + 1);
        double xi = std::cos(th);
        double wi = M_PI / (K + 1) * std::sin(th) * std::sin(th);
        acc += wi * pj(xi) * pk(xi);
      }
      CHECK(std::fabs(acc) <= 1e-8);
    }
}

TEST_CASE("expansion of the two certified polynomials") {
  GegenbauerExpansion e3 = to_gegenbauer(k3_double(), 3);
  std::vector<double> want3 = {1, 1.6, 3.48, 1.65, 1.96, 0.1, 0, 0, 0, 0.32};
  REQUIRE(e3.c.size() == want3.size());
  for (size_t k = 0; k < want3.size(); ++k)
    CHECK(e3.c[k] == doctest::Approx(want3[k]).epsilon(1e-12));
  CHECK(e3.admissible());

  GegenbauerExpansion e4 = to_gegenbauer(k4_double(), 4);
  std::vector<double> want4 = {1, 2, 6.12, 3.484, 5.12, 0, 0, 0, 0, 1.05};
  REQUIRE(e4.c.size() == want4.size());
  for (size_t k = 0; k < want4.size(); ++k)
    CHECK(e4.c[k] == doctest::Approx(want4[k]).epsilon(1e-12));
  CHECK(e4.admissible());

  GegenbauerExpansion ec = to_gegenbauer(Polynomial::constant(1.0), 5);
  REQUIRE(ec.c.size() == 1);
  CHECK(ec.c[0] == doctest::Approx(1.0));
}

TEST_CASE("basis conversion roundtrip on random polynomials") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::uniform_int_distribution<int> D(0, 12);
  std::uniform_int_distribution<int> N(3, 5);
  for (int trial = 0; trial < 100; ++trial) {
    int deg = D(rng), n = N(rng);
    std::vector<double> c(deg + 1);
    for (auto& v : c) v = U(rng);
    Polynomial p(c);
    Polynomial back = from_gegenbauer(to_gegenbauer(p, n));
    REQUIRE(back.degree() == p.degree());
    for (int k = 0; k <= p.degree(); ++k)
      CHECK(std::fabs(back.coeff(k) - p.coeff(k)) <= 1e-9);
  }
}

TEST_CASE("sampled positive-semidefiniteness of Gegenbauer sums") {
  // Random finite point sets on S^2 and S^3: sum_{i,j} G_k(x_i . x_j) >= 0
  // within tolerance.
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> M(2, 12);
  for (int n : {3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      int m = M(rng);
      std::vector<std::vector<double>> pts;
      for (int i = 0; i < m; ++i) pts.push_back(random_unit_vector(rng, n));
      for (int k = 0; k <= 9; ++k) {
        Polynomial g = gegenbauer(n, k);
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            double dot = 0.0;
            for (int d = 0; d < n; ++d) dot += pts[i][d] * pts[j][d];
            acc += g(std::min(1.0, std::max(-1.0, dot)));
          }
        CHECK(acc >= -1e-9 * m * m);
      }
    }
  }
}

TEST_CASE("root isolation on the certified polynomials") {
  auto roots3 = isolate_roots(k3_double(), -1.0, 0.5, 1e-9);
  REQUIRE(roots3.size() == 1);
  CHECK(roots3[0].status == RootBracket::Status::kSimple);
  CHECK(roots3[0].lo <= -0.5907 + 5e-4);
  CHECK(roots3[0].hi >= -0.5907 - 5e-4);
  CHECK(roots3[0].hi - roots3[0].lo <= 2e-9);

  auto roots4 = isolate_roots(k4_double(), -1.0, 1.0, 1e-9);
  REQUIRE(roots4.size() == 2);
  CHECK(roots4[0].lo <= -0.60794 + 5e-5);
  CHECK(roots4[0].hi >= -0.60794 - 5e-5);
  CHECK(std::fabs(roots4[1].lo - 0.5) <= 1e-9);
  CHECK(std::fabs(roots4[1].hi - 0.5) <= 1e-9);
  CHECK(roots4[1].lo <= 0.5);
  CHECK(roots4[1].hi >= 0.5);

  auto none = isolate_roots(Polynomial({1.0, 0.0, 1.0}), -1.0, 1.0, 1e-9);
  CHECK(none.empty());
}

TEST_CASE("multiple roots are flagged, not dropped") {
  // (t - 0.25)^2 (t + 0.5)
  Polynomial dbl = Polynomial({-0.25, 1.0}) * Polynomial({-0.25, 1.0}) *
                   Polynomial({0.5, 1.0});
  auto roots = isolate_roots(dbl, -1.0, 1.0, 1e-9);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].status == RootBracket::Status::kSimple);
  CHECK(roots[0].lo <= -0.5);
  CHECK(roots[0].hi >= -0.5);
  CHECK(roots[1].status == RootBracket::Status::kMultipleUncertain);
  CHECK(roots[1].lo <= 0.25);
  CHECK(roots[1].hi >= 0.25);
}

TEST_CASE("sign certification") {
  auto roots4 = isolate_roots(k4_double(), -1.0, 0.0, 1e-12);
  REQUIRE(roots4.size() == 1);
  CertResult c1 = certify_sign(k4_double(), roots4[0].hi, 0.5, SignClaim::kNonpositive);
  CHECK(c1.ok);
  CHECK(c1.margin > 0.0);

  CertResult c2 = certify_sign(Polynomial({0.0, 1.0}), -1.0, 0.0, SignClaim::kNonnegative);
  CHECK(!c2.ok);

  auto roots3 = isolate_roots(k3_double(), -1.0, 0.0, 1e-12);
  REQUIRE(roots3.size() == 1);
  CertResult c3 = certify_sign(k3_double(), roots3[0].hi, 0.5, SignClaim::kNonpositive);
  CHECK(c3.ok);
  CHECK(c3.margin > 1e-7);
  CHECK(!c3.fragile);
}

TEST_CASE("monotonicity certification") {
  CertResult m4 = certify_monotone_decreasing(k4_double(), -1.0, -0.60794);
  CHECK(m4.ok);
  CHECK(m4.margin > 0.0);
  CertResult m3 = certify_monotone_decreasing(k3_double(), -1.0, -0.5907);
  CHECK(m3.ok);
  CertResult sq = certify_monotone_decreasing(Polynomial({0.0, 0.0, 1.0}), -1.0, 1.0);
  CHECK(!sq.ok);
}

TEST_CASE("max_on_interval") {
  MaxResult a = max_on_interval(Polynomial({0.0, 0.0, -1.0}), -1.0, 1.0);
  CHECK(a.value == doctest::Approx(0.0));
  CHECK(a.argmax == doctest::Approx(0.0));

  MaxResult b = max_on_interval(Polynomial({0.0, 1.0}), 0.0, 2.0);
  CHECK(b.value == doctest::Approx(2.0));
  CHECK(b.argmax == doctest::Approx(2.0));

  // Dominates dense sampling.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(8);
    for (auto& v : c) v = U(rng);
    Polynomial p(c);
    MaxResult m = max_on_interval(p, -1.0, 1.0);
    double dense = -HUGE_VAL;
    for (int i = 0; i <= 10000; ++i) dense = std::max(dense, p(-1.0 + 2e-4 * i));
    CHECK(m.value >= dense - 1e-9);
  }
}

TEST_CASE("extension validation of the two certified polynomials") {
  ExtensionPolynomial e3 = validate_extension_or_throw(k3_polynomial(), 3, Rational(1, 2));
  CHECK(!e3.delsarte_mode);
  CHECK(e3.t0_bracket.lo <= 0.5907 + 5e-4);
  CHECK(e3.t0_bracket.hi >= 0.5907 - 5e-4);
  CHECK(e3.sign_cert.ok);
  CHECK(e3.monotone_cert.ok);
  CHECK(e3.theta0_deg() == doctest::Approx(53.794).epsilon(1e-3));

  ExtensionPolynomial e4 = validate_extension_or_throw(k4_polynomial(), 4, Rational(1, 2));
  CHECK(e4.t0() == doctest::Approx(0.60794).epsilon(1e-4));
  CHECK(e4.theta0_deg() == doctest::Approx(52.5588).epsilon(1e-4));
  CHECK(e4.sign_cert.ok);
  CHECK(e4.monotone_cert.ok);

  // Tampering with the topmost Gegenbauer coefficient breaks admissibility.
  GegenbauerExpansion tampered = to_gegenbauer(Polynomial(k4_polynomial().to_doubles()), 4);
  tampered.c[9] = -tampered.c[9];
  ExactPoly bad = ExactPoly::from_doubles(from_gegenbauer(tampered).coeffs());
  ExtensionPolynomial out;
  ExtensionError err;
  CHECK(!validate_extension(bad, 4, Rational(1, 2), &out, &err));
  CHECK(err.check == "admissible");
}
