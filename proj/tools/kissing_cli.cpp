// Command-line front end: verification pipelines, polynomial search,
// angle bounds, certificate and plot-data emission.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kissing/pipelines.hpp"

using namespace kissing;

namespace {

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

void print_summary(const Certificate& cert) {
  std::cout << "problem: n=" << cert.problem.n
            << " z=" << format_real(cert.problem.z) << "\n";
  for (const auto& c : cert.checks)
    std::cout << "  check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
              << " (margin " << format_real(c.margin) << ")\n";
  std::cout << "  mu = " << cert.mu << "\n";
  for (const auto& e : cert.h)
    std::cout << "  h_" << e.m << " = " << format_real(e.value) << "  ["
              << e.method << ", " << (e.over_estimate ? "over-estimate" : "exact")
              << "]\n";
  std::cout << "  h_max = " << format_real(cert.h_max)
            << "  bound = " << format_real(cert.bound) << "\n";
  std::cout << "conclusion: "
            << (cert.conclusion.empty() ? std::string("(none)") : cert.conclusion)
            << "\n";
}

int run_verify(const VerifyResult& res, const std::string& out,
               bool quiet) {
  if (!quiet) print_summary(res.certificate);
  write_or_print(out, res.certificate.to_json());
  return res.concluded ? 0 : 1;
}

std::vector<std::string> split_coeffs(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delsarte-type bounds for kissing numbers and spherical codes"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path, quiet_flagged;
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress the human-readable summary");

  auto* k3 = app.add_subcommand("verify-k3", "certify k(3) = 12");
  std::string k3_out;
  k3->add_option("--out", k3_out, "certificate JSON path");

  auto* k4 = app.add_subcommand("verify-k4", "certify k(4) = 24");
  std::string k4_out;
  k4->add_option("--out", k4_out, "certificate JSON path");

  auto* dels = app.add_subcommand("delsarte", "classic LP bound (t0 = 1)");
  SearchConfig dcfg;
  dcfg.t0 = 1.0;
  std::string d_out;
  dels->add_option("--n", dcfg.n, "dimension")->required();
  dels->add_option("--z", dcfg.z, "inner-product cap");
  dels->add_option("--d", dcfg.d, "max Gegenbauer degree")->required();
  dels->add_option("--N", dcfg.N, "grid resolution");
  dels->add_option("--out", d_out, "result JSON path");

  auto* srch = app.add_subcommand("search", "extension-polynomial LP search");
  SearchConfig scfg;
  std::string s_out, s_config;
  srch->add_option("--n", scfg.n, "dimension");
  srch->add_option("--z", scfg.z, "inner-product cap");
  srch->add_option("--t0", scfg.t0, "target sign-change point");
  srch->add_option("--d", scfg.d, "max Gegenbauer degree");
  srch->add_option("--N", scfg.N, "grid resolution");
  srch->add_option("--strict-margin", scfg.strict_margin,
                   "strictness margin in grid-step units");
  srch->add_option("--config", s_config, "JSON config file (overrides flags)");
  srch->add_option("--out", s_out, "result JSON path");

  auto* musin = app.add_subcommand("musin", "full pipeline on a user polynomial");
  std::string m_poly, m_z = "1/2", m_out, m_witness;
  int m_n = 4;
  musin->add_option("--poly", m_poly,
                    "comma-separated rational coefficients, constant first")
      ->required();
  musin->add_option("--n", m_n, "dimension")->required();
  musin->add_option("--z", m_z, "inner-product cap (rational literal)");
  musin->add_option("--witness", m_witness, "point-config JSON for the lower bound");
  musin->add_option("--out", m_out, "certificate JSON path");

  auto* ab = app.add_subcommand("angle-bound", "upper bound on phi_n(M)");
  int ab_n = 3, ab_m = 13;
  ab->add_option("--n", ab_n, "dimension")->required();
  ab->add_option("--M", ab_m, "number of points")->required();

  auto* plot = app.add_subcommand("plot", "CSV samples of f over [-1, z]");
  std::string p_which = "k3poly", p_poly, p_out;
  int p_samples = 200;
  plot->add_option("--which", p_which, "k3poly | k4poly | custom");
  plot->add_option("--poly", p_poly, "custom rational coefficients");
  plot->add_option("--samples", p_samples, "sample count (>= 2)");
  plot->add_option("--out", p_out, "CSV path");

  auto* wit = app.add_subcommand("witness", "emit a named witness configuration");
  std::string w_name = "cell24", w_out;
  int w_n = 0;
  double w_z = 0.5;
  wit->add_option("--name", w_name, "icosahedron | cell24 | simplex");
  wit->add_option("--n", w_n, "dimension (simplex only)");
  wit->add_option("--z", w_z, "validate against this cap");
  wit->add_option("--out", w_out, "point-config JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (k3->parsed()) return run_verify(verify_k3(), k3_out, quiet);
    if (k4->parsed()) return run_verify(verify_k4(), k4_out, quiet);

    if (dels->parsed()) {
      dcfg.t0 = 1.0;
      SearchResult res = search(dcfg);
      if (!quiet)
        std::cout << "delsarte bound: f(1) = " << format_real(res.E)
                  << (res.certified ? "" : "  [grid-only]") << "\n";
      write_or_print(d_out, res.to_json());
      return res.certified ? 0 : 1;
    }

    if (srch->parsed()) {
      if (!s_config.empty()) {
        std::ifstream in(s_config);
        if (!in) throw std::runtime_error("cannot read config: " + s_config);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        scfg = SearchConfig::from_json(text);
      }
      SearchResult res = search(scfg);
      if (!quiet)
        std::cout << "E = " << format_real(res.E)
                  << "  F0 = " << format_real(res.F0)
                  << (res.certified ? "" : "  [grid-only]") << "\n";
      write_or_print(s_out, res.to_json());
      return res.certified ? 0 : 1;
    }

    if (musin->parsed()) {
      PointConfig witness;
      bool have_witness = false;
      if (!m_witness.empty()) {
        std::ifstream in(m_witness);
        if (!in) throw std::runtime_error("cannot read witness: " + m_witness);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        witness = PointConfig::from_json(text);
        have_witness = true;
      }
      VerifyResult res = musin_verify(split_coeffs(m_poly), m_n, m_z,
                                      have_witness ? &witness : nullptr);
      return run_verify(res, m_out, quiet);
    }

    if (ab->parsed()) {
      AngleBoundResult res = angle_bound(ab_n, ab_m);
      std::cout << "phi_" << ab_n << "(" << ab_m << ") < "
                << format_real(res.angle_deg) << " deg";
      if (res.trivial) std::cout << "  [trivial: simplex placement exists]";
      std::cout << "\n";
      return res.conclusive ? 0 : 1;
    }

    if (plot->parsed()) {
      Polynomial f;
      double z = 0.5;
      if (p_which == "k3poly") {
        f = Polynomial(k3_polynomial().to_doubles());
      } else if (p_which == "k4poly") {
        f = Polynomial(k4_polynomial().to_doubles());
      } else if (p_which == "custom") {
        f = Polynomial(poly_from_strings(split_coeffs(p_poly)).to_doubles());
      } else {
        throw std::runtime_error("unknown plot target: " + p_which);
      }
      write_or_print(p_out, plot_csv(plot_data(f, z, p_samples)));
      return 0;
    }

    if (wit->parsed()) {
      PointConfig cfg = witness_config(w_name, w_n);
      bool valid = validate_code(cfg, w_z);
      if (!quiet)
        std::cout << w_name << ": " << cfg.points.size() << " points, max inner product "
                  << format_real(cfg.max_pairwise_inner()) << ", valid at z="
                  << format_real(w_z) << ": " << (valid ? "yes" : "no") << "\n";
      write_or_print(w_out, cfg.to_json());
      return valid ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
