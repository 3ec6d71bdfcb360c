// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kissing/pipelines.hpp"

using namespace kissing;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  g_notes.push_back(buf);
}

struct Criterion {
  std::string label;
  bool pass = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      note("    criterion %s violated: %s", label.c_str(), what.c_str());
    }
  }
  void finish(double seconds) {
    printf("%s criterion %s (%.1fs)\n", pass ? "PASS" : "FAIL", label.c_str(),
           seconds);
    for (const auto& n : g_notes) printf("%s\n", n.c_str());
    g_notes.clear();
    if (!pass) ++g_failures;
  }
};

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::string fmt_mismatch(const char* name, double got, double want, double tol) {
  char buf[256];
  snprintf(buf, sizeof(buf), "%s = %.9g (want %.9g +/- %.2g)", name, got, want, tol);
  return buf;
}

void check_value(Criterion& c, const char* name, double got, double want,
                 double tol) {
  c.require(close(got, want, tol), fmt_mismatch(name, got, want, tol));
}

// --------------------------------------------------------------------------
// Criterion 1: the n = 3 chain
// --------------------------------------------------------------------------
void criterion1() {
  double t0 = now();
  Criterion c{"1 (verify-k3)"};
  const ExactPoly& f = k3_polynomial();
  check_value(c, "f(1)", to_double(f.eval(Rational(1))), 10.11, 1e-9);
  check_value(c, "f(1)+f(-1)",
              to_double(f.eval(Rational(1)) + f.eval(Rational(-1))), 12.88, 1e-9);

  ExtensionPolynomial ep = validate_extension_or_throw(f, 3, Rational(1, 2));
  check_value(c, "h2", h2(ep), 12.8749, 5e-4);

  H3GridResult tri = h3_triangle_n3(ep);
  const double cells[5] = {12.9425, 12.9648, 12.9508, 12.9606, 12.9519};
  c.require(tri.cell_values.size() == 5, "five triangle cells expected");
  for (size_t i = 0; i < tri.cell_values.size() && i < 5; ++i)
    check_value(c, ("cell " + std::to_string(i)).c_str(), tri.cell_values[i],
                cells[i], 1e-3);

  H4RhombResult rh = h4_rhomb_n3(ep);
  c.require(rh.case_values.size() == 2, "two rhomb cases expected");
  if (rh.case_values.size() == 2) {
    check_value(c, "rhomb case 1", rh.case_values[0], 12.9171, 1e-3);
    check_value(c, "rhomb case 2", rh.case_values[1], 12.9182, 1e-3);
  }

  c.require(ep.t0_bracket.lo <= 0.5907 + 5e-4 && ep.t0_bracket.hi >= 0.5907 - 5e-4,
            "t0 bracket must contain 0.5907 +/- 5e-4");
  double angle = rad2deg(std::acos(projected_cos_bound(0.5, ep.t0())));
  check_value(c, "projected angle", angle, 76.582, 0.01);

  VerifyResult vr = verify_k3();
  c.require(vr.certificate.h_max < 13.0, "h_max below 13");
  c.require(13.0 - vr.certificate.h_max > 0.03, "margin above 0.03");
  c.require(vr.concluded && vr.certificate.conclusion == "k(3)=12",
            "conclusion emitted");
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 2: the n = 4 chain
// --------------------------------------------------------------------------
void criterion2() {
  double t0 = now();
  Criterion c{"2 (verify-k4)"};
  const ExactPoly& f = k4_polynomial();
  check_value(c, "h0", to_double(f.eval(Rational(1))), 18.774, 1e-9);
  check_value(c, "h1",
              to_double(f.eval(Rational(1)) + f.eval(Rational(-1))), 24.48, 1e-9);

  std::vector<Rational> cexp = to_gegenbauer_exact(f, 4);
  const double want[10] = {1, 2, 6.12, 3.484, 5.12, 0, 0, 0, 0, 1.05};
  c.require(cexp.size() == 10, "degree-9 expansion expected");
  for (size_t k = 0; k < cexp.size() && k < 10; ++k)
    check_value(c, ("c" + std::to_string(k)).c_str(), to_double(cexp[k]),
                want[k], 1e-9);

  auto roots = isolate_roots_exact(f, Rational(-1), Rational(1),
                                   rational_from_double(1e-10));
  c.require(roots.size() == 2, "two roots on [-1, 1]");
  if (roots.size() == 2) {
    c.require(roots[0].lo <= -0.60794 + 5e-5 && roots[0].hi >= -0.60794 - 5e-5,
              "first root near -0.60794");
    c.require(roots[1].lo <= 0.5 + 1e-9 && roots[1].hi >= 0.5 - 1e-9,
              "second root at 0.5");
  }

  ExtensionPolynomial ep = validate_extension_or_throw(f, 4, Rational(1, 2));
  check_value(c, "h2", h2(ep), 24.8644, 5e-4);

  PowersumResult p3 = h_simplex_powersum(ep, 3);
  PowersumResult p4 = h_simplex_powersum(ep, 4);
  check_value(c, "h3 (power sums)", p3.value, 24.8345, 5e-3);
  check_value(c, "h4 (power sums)", p4.value, 24.818, 5e-3);
  check_value(c, "h3 (triangulation)", h_simplex_triangulation(ep, 3, 0.05),
              24.8345, 5e-3);
  check_value(c, "h4 (triangulation)", h_simplex_triangulation(ep, 4, 0.05),
              24.818, 5e-3);

  H5Result h5 = h5_bound_n4(ep);
  c.require(h5.value >= 24.6856 && h5.value <= 24.90,
            fmt_mismatch("h5", h5.value, 24.8, 0.1));
  double h6 = h6_bound_n4(ep);
  c.require(h6 > 24.68 && h6 < 24.99, fmt_mismatch("h6", h6, 24.93, 0.06));

  VerifyResult vr = verify_k4();
  c.require(vr.certificate.mu == 6, "mu = 6");
  c.require(vr.certificate.h_max < 25.0, "h_max below 25");
  c.require(25.0 - vr.certificate.h_max > 0.06, "margin above 0.06");
  c.require(vr.concluded && vr.certificate.conclusion == "k(4)=24",
            "conclusion emitted");
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 3: extension-polynomial search values
// --------------------------------------------------------------------------
void criterion3() {
  double t0 = now();
  Criterion c{"3 (search E values)"};
  {
    SearchResult r = search(SearchConfig{4, 0.5, 0.6058, 9, 2000, 0.0});
    check_value(c, "E(4, 0.5, 0.6058, 9, 2000)", r.E, 24.7895, 0.05);
  }
  {
    SearchResult r = search(SearchConfig{9, 0.5, 0.54, 11, 2000, 0.0});
    check_value(c, "E(9, 0.5, 0.54, 11, 2000)", r.E, 366.7822, 1.0);
  }
  {
    SearchResult r = search(SearchConfig{10, 0.5, 0.586, 11, 2000, 0.0});
    check_value(c, "E(10, 0.5, 0.586, 11, 2000)", r.E, 570.5240, 1.5);
  }
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 4: classic mode
// --------------------------------------------------------------------------
void criterion4() {
  double t0 = now();
  Criterion c{"4 (classic mode)"};
  {
    SearchResult r = search(SearchConfig{4, 0.5, 1.0, 9, 2000, 0.0});
    check_value(c, "bound(4, 0.5, d=9)", r.E, 25.5585, 0.02);
  }
  {
    SearchResult r = search(SearchConfig{8, 0.5, 1.0, 6, 2000, 0.0});
    check_value(c, "bound(8, 0.5, d=6)", r.E, 240.0, 0.5);
  }
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 5: witnesses
// --------------------------------------------------------------------------
void criterion5() {
  double t0 = now();
  Criterion c{"5 (witnesses)"};
  PointConfig cell = witness_config("cell24");
  c.require(cell.points.size() == 24, "24 points");
  c.require(validate_code(cell, 0.5), "cell24 validates at z = 1/2");
  c.require(std::fabs(cell.max_pairwise_inner() - 0.5) < 1e-14,
            "max inner product exactly 1/2");
  PointConfig ico = witness_config("icosahedron");
  c.require(validate_code(ico, 0.5), "icosahedron validates at z = 1/2");
  c.require(close(ico.max_pairwise_inner(), 1.0 / std::sqrt(5.0), 1e-12),
            "max inner product 1/sqrt(5)");
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 6: property suites
// --------------------------------------------------------------------------
void criterion6() {
  double t0 = now();
  Criterion c{"6 (property suites)"};
  std::mt19937 rng(20260811);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(-3.0, 3.0);

  // Sampled sum-nonnegativity of the Gegenbauer kernels on S^2 and S^3.
  for (int n : {3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      int m = 2 + static_cast<int>(rng() % 10);
      std::vector<std::vector<double>> pts(m, std::vector<double>(n));
      for (auto& p : pts) {
        double nn = 0.0;
        for (auto& x : p) {
          x = gauss(rng);
          nn += x * x;
        }
        for (auto& x : p) x /= std::sqrt(nn);
      }
      for (int k = 0; k <= 9; ++k) {
        Polynomial g = gegenbauer(n, k);
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            double dot = 0.0;
            for (int d = 0; d < n; ++d) dot += pts[i][d] * pts[j][d];
            acc += g(std::clamp(dot, -1.0, 1.0));
          }
        if (!(acc >= -1e-9 * m * m)) {
          c.require(false, "kernel sum nonnegativity violated");
          trial = 100;
          break;
        }
      }
    }
  }

  // Basis-conversion roundtrips.
  for (int trial = 0; trial < 100; ++trial) {
    int deg = static_cast<int>(rng() % 13);
    int n = 3 + static_cast<int>(rng() % 3);
    std::vector<double> coef(deg + 1);
    for (auto& x : coef) x = unif(rng);
    Polynomial p(coef);
    Polynomial back = from_gegenbauer(to_gegenbauer(p, n));
    for (int k = 0; k <= deg; ++k)
      if (!(std::fabs(back.coeff(k) - p.coeff(k)) <= 1e-9)) {
        c.require(false, "basis roundtrip drift above 1e-9");
        trial = 100;
        break;
      }
  }

  // lambda and rho involutions.
  for (double a = 60.5; a <= 104.0; a += 1.37)
    if (!(std::fabs(lambda_angle(lambda_angle(a)) - a) <= 1e-10)) {
      c.require(false, "lambda involution drift above 1e-10");
      break;
    }
  for (double dvar = 61.0; dvar <= 119.0; dvar += 1.73)
    if (!(std::fabs(rho_diagonal(rho_diagonal(dvar, 0.5), 0.5) - dvar) <= 1e-10)) {
      c.require(false, "rho involution drift above 1e-10");
      break;
    }

  // Grid-refinement monotonicity, three levels each.
  ExtensionPolynomial ep3 = validate_extension_or_throw(k3_polynomial(), 3, Rational(1, 2));
  ExtensionPolynomial ep4 = validate_extension_or_throw(k4_polynomial(), 4, Rational(1, 2));
  {
    auto uniform_grid = [&](int cells) {
      double r0 = h3_default_grid_deg(ep3).front();
      double th0 = ep3.theta0_deg();
      std::vector<double> g;
      for (int i = 0; i <= cells; ++i) g.push_back(r0 + (th0 - r0) * i / cells);
      return h3_triangle_n3(ep3, g).value;
    };
    double a = uniform_grid(6), b = uniform_grid(12), d = uniform_grid(24);
    c.require(b <= a + 1e-9 && d <= b + 1e-9, "h3 refinement monotone");
  }
  {
    double prev = HUGE_VAL;
    for (double step : {1.0, 0.5, 0.25}) {
      H5Options o;
      o.refine = false;
      o.psi_step_deg = step;
      double v = h5_bound_n4(ep4, o).value;
      c.require(v <= prev + 1e-9, "h5 refinement monotone");
      prev = v;
    }
  }
  {
    double prev = HUGE_VAL;
    for (double eps : {0.4, 0.2, 0.1}) {
      double v = h_simplex_triangulation(ep4, 3, eps);
      c.require(v <= prev + 1e-9, "triangulation refinement monotone");
      prev = v;
    }
  }

  // Sandwich: the reported bounds dominate explicit feasible configurations
  // (frames of an octahedron on a shell, jiggled, rejection-checked).
  AngleCapacityTable table = AngleCapacityTable::standard();
  HReport r4 = h_report(ep4, table);
  HReport r3 = h_report(ep3, table);
  auto h_of = [](const HReport& r, int m) {
    for (const auto& e : r.h)
      if (e.m == m) return e.value;
    return -HUGE_VAL;
  };
  const std::vector<std::array<double, 3>> octa = {
      {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  // n = 4: m up to 6.
  for (int m = 1; m <= 6; ++m) {
    std::uniform_real_distribution<double> shell(45.5, ep4.theta0_deg() - 0.05);
    int produced = 0;
    for (int trial = 0; trial < 100000 && produced < 1000; ++trial) {
      std::vector<std::array<double, 4>> pts;
      std::vector<double> thetas;
      for (int i = 0; i < m; ++i) {
        std::array<double, 3> u = octa[i];
        for (int k = 0; k < 3; ++k) u[k] += 0.05 * gauss(rng);
        double nn = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        double th = deg2rad(shell(rng));
        pts.push_back({std::cos(th), std::sin(th) * u[0] / nn,
                       std::sin(th) * u[1] / nn, std::sin(th) * u[2] / nn});
        thetas.push_back(th);
      }
      bool ok = true;
      for (size_t i = 0; i < pts.size() && ok; ++i)
        for (size_t j = i + 1; j < pts.size() && ok; ++j) {
          double dot = 0.0;
          for (int k = 0; k < 4; ++k) dot += pts[i][k] * pts[j][k];
          if (dot > 0.5) ok = false;
        }
      if (!ok) continue;
      ++produced;
      double H = ep4.f(1.0);
      for (double th : thetas) H += ep4.f(-std::cos(th));
      if (!(H <= h_of(r4, m) + 1e-9)) {
        c.require(false, "sandwich violated for n=4 m=" + std::to_string(m));
        break;
      }
    }
    c.require(produced >= 1000,
              "needed 1000 feasible samples for n=4 m=" + std::to_string(m));
  }
  // n = 3: m up to 4 (square frames on a shell).
  const std::vector<std::array<double, 2>> square = {
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int m = 1; m <= 4; ++m) {
    std::uniform_real_distribution<double> shell(45.5, ep3.theta0_deg() - 0.05);
    int produced = 0;
    for (int trial = 0; trial < 100000 && produced < 1000; ++trial) {
      std::vector<std::array<double, 3>> pts;
      std::vector<double> thetas;
      for (int i = 0; i < m; ++i) {
        std::array<double, 2> u = square[i];
        for (int k = 0; k < 2; ++k) u[k] += 0.05 * gauss(rng);
        double nn = std::sqrt(u[0] * u[0] + u[1] * u[1]);
        double th = deg2rad(shell(rng));
        pts.push_back({std::cos(th), std::sin(th) * u[0] / nn,
                       std::sin(th) * u[1] / nn});
        thetas.push_back(th);
      }
      bool ok = true;
      for (size_t i = 0; i < pts.size() && ok; ++i)
        for (size_t j = i + 1; j < pts.size() && ok; ++j) {
          double dot = 0.0;
          for (int k = 0; k < 3; ++k) dot += pts[i][k] * pts[j][k];
          if (dot > 0.5) ok = false;
        }
      if (!ok) continue;
      ++produced;
      double H = ep3.f(1.0);
      for (double th : thetas) H += ep3.f(-std::cos(th));
      if (!(H <= h_of(r3, m) + 1e-9)) {
        c.require(false, "sandwich violated for n=3 m=" + std::to_string(m));
        break;
      }
    }
    c.require(produced >= 1000,
              "needed 1000 feasible samples for n=3 m=" + std::to_string(m));
  }
  c.finish(now() - t0);
}

// --------------------------------------------------------------------------
// Criterion 7: angle bounds
// --------------------------------------------------------------------------
void criterion7() {
  double t0 = now();
  Criterion c{"7 (angle bounds)"};
  {
    AngleBoundResult r = angle_bound(3, 13);
    c.require(r.conclusive && r.angle_deg <= 59.5,
              fmt_mismatch("phi_3(13)", r.angle_deg, 59.4, 0.1));
  }
  {
    AngleBoundResult r = angle_bound(4, 24);
    c.require(r.conclusive && r.angle_deg <= 60.6,
              fmt_mismatch("phi_4(24)", r.angle_deg, 60.5, 0.1));
  }
  {
    AngleBoundResult r = angle_bound(4, 25);
    c.require(r.conclusive && r.angle_deg <= 59.9,
              fmt_mismatch("phi_4(25)", r.angle_deg, 59.81, 0.1));
  }
  c.finish(now() - t0);
}

}  // namespace

int main() {
  double t0 = now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  printf("%s: %d criterion(s) failed (total %.1fs)\n",
         g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures, now() - t0);
  return g_failures == 0 ? 0 : 1;
}
