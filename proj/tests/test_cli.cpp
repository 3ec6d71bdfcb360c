#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kissing/pipelines.hpp"

using namespace kissing;

TEST_CASE("verify_k3 certificate") {
  VerifyResult res = verify_k3();
  CHECK(res.concluded);
  const Certificate& c = res.certificate;
  CHECK(c.conclusion == "k(3)=12");
  CHECK(c.bound < 13.0);
  CHECK(c.mu == 4);
  REQUIRE(c.h.size() == 5);
  CHECK(c.h[0].value == doctest::Approx(10.11));
  CHECK(c.h[1].value == doctest::Approx(12.88));
  CHECK(c.h[2].value == doctest::Approx(12.8749).epsilon(5e-5));
  CHECK(c.h[3].value < 12.97);
  CHECK(c.h[4].value < 12.92);
  for (const auto& chk : c.checks) {
    CHECK(chk.pass);
    CHECK(chk.margin > 0.0);
  }
}

TEST_CASE("verify_k4 certificate") {
  VerifyResult res = verify_k4();
  CHECK(res.concluded);
  const Certificate& c = res.certificate;
  CHECK(c.conclusion == "k(4)=24");
  CHECK(c.bound < 25.0);
  CHECK(c.mu == 6);
  REQUIRE(c.h.size() == 7);
  CHECK(c.h_max < 25.0);
  for (const auto& chk : c.checks) CHECK(chk.pass);
}

TEST_CASE("certificates are byte-identical across runs") {
  std::string a = verify_k3().certificate.to_json();
  std::string b = verify_k3().certificate.to_json();
  CHECK(a == b);
  CHECK(a.find("\"conclusion\":\"k(3)=12\"") != std::string::npos);
  CHECK(a.find("\"status\":\"fail\"") == std::string::npos);
}

TEST_CASE("tampered polynomial fails admissibility and yields no conclusion") {
  // Negate the top Gegenbauer coefficient of the n = 4 polynomial.
  GegenbauerExpansion e = to_gegenbauer(Polynomial(k4_polynomial().to_doubles()), 4);
  e.c[9] = -e.c[9];
  Polynomial bad = from_gegenbauer(e);
  std::vector<std::string> coeffs;
  for (double c : bad.coeffs()) coeffs.push_back(format_real(c));
  VerifyResult res = musin_verify(coeffs, 4, "1/2");
  CHECK(!res.concluded);
  CHECK(res.certificate.conclusion.empty());
  bool saw_admissible_fail = false;
  for (const auto& chk : res.certificate.checks)
    if (chk.name == "admissible" && !chk.pass) saw_admissible_fail = true;
  CHECK(saw_admissible_fail);
  CHECK(res.certificate.to_json().find("\"conclusion\":null") != std::string::npos);
}

TEST_CASE("musin pipeline concludes on the certified polynomial") {
  VerifyResult res = musin_verify({"-0.016", "-0.434", "-4.128", "-9.832",
                                   "16.384", "70.56", "0", "-107.52", "0",
                                   "53.76"},
                                  4, "1/2");
  CHECK(res.concluded);
  CHECK(res.certificate.conclusion == "code size <= 24");
}

TEST_CASE("plot rows") {
  Polynomial f3 = Polynomial(k3_polynomial().to_doubles());
  auto rows = plot_data(f3, 0.5, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].first == doctest::Approx(-1.0));
  CHECK(rows[1].first == doctest::Approx(-0.25));
  CHECK(rows[2].first == doctest::Approx(0.5));
  for (const auto& [t, v] : rows) CHECK(v == doctest::Approx(f3(t)));

  Polynomial f4 = Polynomial(k4_polynomial().to_doubles());
  auto rows4 = plot_data(f4, 0.5, 3);
  CHECK(rows4[0].second == doctest::Approx(5.706).epsilon(1e-12));

  std::string csv = plot_csv(rows);
  CHECK(csv.substr(0, 6) == "t,f_t\n");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  CHECK_THROWS_AS(plot_data(f3, 0.5, 1), std::invalid_argument);
}

TEST_CASE("angle_bound trivial cases") {
  AngleBoundResult r = angle_bound(3, 4);
  CHECK(r.trivial);
  CHECK(r.angle_deg >= 90.0);
  AngleBoundResult r2 = angle_bound(4, 5);
  CHECK(r2.trivial);
}
