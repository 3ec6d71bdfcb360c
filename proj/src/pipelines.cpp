#include "kissing/pipelines.hpp"

#include <cmath>
#include <stdexcept>

namespace kissing {

namespace {

// Margin by which the projected angle clears the capacity threshold that
// produced mu.
double mu_margin_deg(const ExtensionPolynomial& ep, int mu,
                     const AngleCapacityTable& table) {
  double c = std::clamp(projected_cos_bound(ep.z, ep.t0()), -1.0, 1.0);
  double omega = rad2deg(std::acos(c));
  if (ep.n - 1 == 2) return omega - 360.0 / (mu + 1);
  double best = omega;
  for (const auto& e : table.entries)
    if (e.k == ep.n - 1 && e.capacity == mu && e.omega_threshold_deg < omega)
      best = std::min(best, omega - e.omega_threshold_deg);
  return best;
}

Certificate build_certificate(const ExactPoly& f_exact, int n,
                              const Rational& z_exact,
                              const PointConfig* witness,
                              const std::string& witness_name,
                              const std::string& success_conclusion,
                              double target_bound,
                              const HReportOptions& options) {
  // success_conclusion "@generic" emits the certified integer code bound.
  Certificate cert;
  cert.problem.n = n;
  cert.problem.z = to_double(z_exact);
  cert.monomial = f_exact.to_doubles();
  {
    GegenbauerExpansion e = to_gegenbauer(Polynomial(cert.monomial), n);
    cert.gegenbauer = e.c;
  }

  ExtensionPolynomial ep;
  ExtensionError err;
  if (!validate_extension(f_exact, n, z_exact, &ep, &err)) {
    double viol = 0.0;
    if (err.check == "admissible")
      for (double c : cert.gegenbauer) viol = std::max(viol, -c);
    cert.checks.push_back({err.check, false, viol});
    return cert;
  }

  cert.checks.push_back({"admissible", true, ep.c0()});
  if (!ep.delsarte_mode) {
    cert.checks.push_back({"t0-root", true, ep.t0() - ep.z});
    cert.checks.push_back({"sign-nonpositive", true, ep.sign_cert.margin});
    cert.checks.push_back(
        {"monotone-decreasing", true, ep.monotone_cert.margin});
  } else {
    cert.checks.push_back({"sign-nonpositive", true, ep.sign_cert.margin});
  }

  AngleCapacityTable table = AngleCapacityTable::standard();
  HReport report;
  try {
    report = h_report(ep, table, options);
  } catch (const std::runtime_error&) {
    cert.checks.push_back({"h-chain", false, 0.0});
    return cert;
  }
  cert.mu = report.mu;
  for (const auto& e : report.h)
    cert.h.push_back({e.m, e.value, e.method, e.over_estimate});
  cert.h_max = report.h_max;
  cert.bound = report.bound;
  if (!ep.delsarte_mode)
    cert.checks.push_back({"mu-capacity", true, mu_margin_deg(ep, report.mu, table)});
  cert.checks.push_back(
      {"integer-slack", report.slack_ok, report.integer_slack});

  if (target_bound > 0.0)
    cert.checks.push_back({"bound-below-" + format_real(target_bound),
                           report.bound < target_bound,
                           target_bound - report.bound});

  if (witness != nullptr) {
    bool valid = validate_code(*witness, cert.problem.z);
    double margin = cert.problem.z + 1e-12 - witness->max_pairwise_inner();
    cert.checks.push_back({"witness-" + witness_name + "-validates", valid, margin});
    int count = static_cast<int>(witness->points.size());
    bool attains = count == static_cast<int>(std::floor(report.bound));
    cert.checks.push_back({"witness-attains-bound", attains,
                           count + 1.0 - report.bound});
  }

  if (cert.all_pass()) {
    cert.conclusion = success_conclusion;
    if (success_conclusion == "@generic")
      cert.conclusion = "code size <= " +
                        std::to_string(static_cast<long>(std::floor(cert.bound)));
  }
  return cert;
}

}  // namespace

VerifyResult verify_k3() {
  PointConfig ico = witness_config("icosahedron");
  VerifyResult res;
  res.certificate =
      build_certificate(k3_polynomial(), 3, Rational(1, 2), &ico,
                        "icosahedron", "k(3)=12", 13.0, HReportOptions{});
  res.concluded = !res.certificate.conclusion.empty();
  return res;
}

VerifyResult verify_k4() {
  PointConfig cell = witness_config("cell24");
  VerifyResult res;
  res.certificate =
      build_certificate(k4_polynomial(), 4, Rational(1, 2), &cell, "cell24",
                        "k(4)=24", 25.0, HReportOptions{});
  res.concluded = !res.certificate.conclusion.empty();
  return res;
}

VerifyResult musin_verify(const std::vector<std::string>& coeffs, int n,
                          const std::string& z_literal,
                          const PointConfig* witness) {
  ExactPoly f = poly_from_strings(coeffs);
  Rational z = parse_rational(z_literal);
  VerifyResult res;
  res.certificate = build_certificate(f, n, z, witness, "user", "@generic",
                                      0.0, HReportOptions{});
  res.concluded = !res.certificate.conclusion.empty();
  return res;
}

AngleBoundResult angle_bound(int n, int M) {
  if (n != 3 && n != 4)
    throw std::invalid_argument("angle_bound: n must be 3 or 4");
  if (M < 2) throw std::invalid_argument("angle_bound: M must be >= 2");
  AngleBoundResult res;
  if (M <= n + 1) {
    // Simplex placements give M points at >= 90 degrees for any M <= n+1.
    res.angle_deg = 90.0;
    res.trivial = true;
    res.conclusive = true;
    return res;
  }

  AngleCapacityTable table = AngleCapacityTable::standard();
  HReportOptions fast;
  fast.triangulation_eps_deg = 0.15;
  fast.h5.alpha_floor_deg = 0.05;
  fast.h5.psi_floor_deg = 0.005;
  fast.h3_cells = 300;
  fast.h4_exact = true;

  // mu coverage: the capacity table needs the projected angle above 72
  // degrees (n = 3) or above the seven-point threshold (n = 4).
  auto t0_floor = [&](double z) {
    double thr = n == 3 ? std::cos(deg2rad(72.0))
                        : (std::cos(deg2rad(40.0)) / std::sin(deg2rad(40.0))) *
                              (std::cos(deg2rad(80.0)) / std::sin(deg2rad(80.0)));
    if (z <= thr) return z + 1e-3;
    return std::sqrt((z - thr) / (1.0 - thr));
  };

  // One LP-search candidate, iteratively steered by feeding the h-chain's
  // argmax configurations back as LP rows.  E never decreases under cuts and
  // lower-bounds h_max, so E >= M means this candidate is hopeless.
  auto run_candidate = [&](double z, double t0, int d, double* best) {
    SearchConfig cfg{n, z, t0, d, 2000, 0.05, 4, {}};
    for (int iter = 0; iter < 14; ++iter) {
      SearchResult sr;
      try {
        sr = search(cfg);
      } catch (const std::exception&) {
        return false;
      }
      if (sr.E >= M || !sr.certified) return false;
      try {
        ExtensionPolynomial ep =
            validate_extension_or_throw(sr.f_exact, n, rational_from_double(z));
        HReport rep = h_report(ep, table, fast);
        if (rep.slack_ok) *best = std::min(*best, rep.bound);
        if (rep.slack_ok && rep.bound < M) return true;
        const HEntry* top = nullptr;
        for (const auto& e : rep.h)
          if (e.m == rep.argmax_m) top = &e;
        if (top == nullptr || top->witness_theta_deg.empty()) return false;
        cfg.extra_configs.push_back(top->witness_theta_deg);
      } catch (const std::exception&) {
        return false;
      }
    }
    return false;
  };

  auto certified_bound = [&](double z) {
    double best = HUGE_VAL;
    double lo = t0_floor(z);
    const std::vector<double> offsets = {0.003, 0.01, 0.03, 0.08};
    const std::vector<int> degrees = n == 3 ? std::vector<int>{11}
                                            : std::vector<int>{9, 11};
    for (double off : offsets)
      for (int d : degrees) {
        double t0 = lo + off;
        if (t0 <= z + 0.005 || t0 >= 0.95) continue;
        if (run_candidate(z, t0, d, &best)) return best;
      }
    return best;
  };

  // Scan the angle down in 2-degree steps until the certificate fails, then
  // bisect the boundary.
  double pass_angle = -1.0, fail_angle = -1.0, pass_bound = 0.0;
  for (double omega = 66.0; omega >= 48.0; omega -= 1.5) {
    double b = certified_bound(std::cos(deg2rad(omega)));
    if (b < M) {
      pass_angle = omega;
      pass_bound = b;
    } else {
      if (pass_angle < 0) continue;  // keep scanning for a first pass
      fail_angle = omega;
      break;
    }
  }
  if (pass_angle < 0) throw std::runtime_error("angle_bound: inconclusive");
  if (fail_angle < 0) fail_angle = pass_angle - 1.5;

  for (int it = 0; it < 9; ++it) {
    double mid = 0.5 * (pass_angle + fail_angle);
    double b = certified_bound(std::cos(deg2rad(mid)));
    if (b < M) {
      pass_angle = mid;
      pass_bound = b;
    } else {
      fail_angle = mid;
    }
  }
  res.angle_deg = pass_angle;
  res.z_star = std::cos(deg2rad(pass_angle));
  res.bound_at_z = pass_bound;
  res.conclusive = true;
  return res;
}

std::vector<std::pair<double, double>> plot_data(const Polynomial& f, double z,
                                                 int samples) {
  if (samples < 2) throw std::invalid_argument("plot_data: samples >= 2");
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < samples; ++i) {
    double t = -1.0 + (z + 1.0) * i / (samples - 1);
    rows.emplace_back(t, f(t));
  }
  return rows;
}

std::string plot_csv(const std::vector<std::pair<double, double>>& rows) {
  std::string out = "t,f_t\n";
  for (const auto& [t, v] : rows)
    out += format_real(t) + "," + format_real(v) + "\n";
  return out;
}

}  // namespace kissing
