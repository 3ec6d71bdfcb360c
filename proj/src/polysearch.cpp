#include "kissing/polysearch.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "kissing/certificate.hpp"

namespace kissing {

double simplex_center_products(int n, double z, int m) {
  if (n < 3) throw std::invalid_argument("simplex_center_products: n >= 3");
  if (m >= 1 && m <= n) return -std::sqrt((1.0 + (m - 1) * z) / m);
  if (m == 2 * n - 2) return -std::sqrt(z);
  throw std::invalid_argument("simplex_center_products: m outside I_n");
}

namespace {

void validate_config(const SearchConfig& cfg) {
  if (cfg.n < 3) throw std::invalid_argument("search: n must be >= 3");
  if (!(cfg.z >= 0.0 && cfg.z < 1.0))
    throw std::invalid_argument("search: need 0 <= z < 1");
  if (!(cfg.z < cfg.t0 && cfg.t0 <= 1.0))
    throw std::invalid_argument("search: need z < t0 <= 1");
  if (cfg.d < 1) throw std::invalid_argument("search: d must be >= 1");
  if (cfg.N < 10) throw std::invalid_argument("search: N must be >= 10");
}

}  // namespace

LinearProgram build_lp(const SearchConfig& cfg) {
  validate_config(cfg);
  const int d = cfg.d, N = cfg.N;
  const double eps = (1.0 + cfg.z) / N;
  const bool delsarte = cfg.t0 == 1.0;

  // Tabulate G_k^{(n)}(a_j).
  std::vector<Polynomial> G;
  for (int k = 1; k <= d; ++k) G.push_back(gegenbauer(cfg.n, k));
  // a_j computed as -1 + (1+z) j / N so that a_N lands on z exactly.
  std::vector<double> grid(N + 1);
  std::vector<std::vector<double>> gv(N + 1, std::vector<double>(d));
  for (int j = 0; j <= N; ++j) {
    grid[j] = -1.0 + (1.0 + cfg.z) * j / N;
    for (int k = 0; k < d; ++k) gv[j][k] = G[k](grid[j]);
  }

  LinearProgram lp;
  const int nv = delsarte ? d : d + 1;  // [F0,] c_1..c_d
  lp.objective.assign(nv, 1.0);
  lp.lower.assign(nv, 0.0);
  if (!delsarte) lp.lower[0] = -HUGE_VAL;  // F0 free

  auto c_index = [&](int k) { return delsarte ? k - 1 : k; };

  if (!delsarte) {
    // C2: monotone decrease on the grid left of -t0 (straddling pair
    // included); optionally on a finer sub-lattice.
    const int r = std::max(1, cfg.c2_refine);
    const double sub = eps / r;
    for (int j = 0; j < N; ++j) {
      if (grid[j] > -cfg.t0 + 1e-12) break;
      for (int q = 0; q < r; ++q) {
        double x0 = grid[j] + sub * q;
        double x1 = q + 1 == r ? grid[j + 1] : grid[j] + sub * (q + 1);
        std::vector<double> row(nv, 0.0);
        for (int k = 0; k < d; ++k)
          row[c_index(k + 1)] = G[k](x0) - G[k](x1);
        lp.add_row(std::move(row), Relation::kGe, cfg.strict_margin * sub);
      }
    }
  }
  // C3: nonpositivity from the first grid point at or right of -t0.
  for (int j = 0; j <= N; ++j) {
    if (!delsarte && grid[j] < -cfg.t0 - 1e-12) continue;
    std::vector<double> row(nv, 0.0);
    for (int k = 0; k < d; ++k) row[c_index(k + 1)] = gv[j][k];
    lp.add_row(std::move(row), Relation::kLe, -1.0 - cfg.strict_margin * eps);
  }
  if (!delsarte) {
    // C4: center-configuration values for m in I_n.
    std::vector<int> ms;
    for (int m = 1; m <= cfg.n; ++m) ms.push_back(m);
    ms.push_back(2 * cfg.n - 2);
    for (int m : ms) {
      double b = simplex_center_products(cfg.n, cfg.z, m);
      std::vector<double> row(nv, 0.0);
      row[0] = -1.0 / m;
      for (int k = 0; k < d; ++k) row[c_index(k + 1)] = gegenbauer(cfg.n, k + 1)(b);
      lp.add_row(std::move(row), Relation::kLe, -1.0);
    }
    // Feedback rows: sum_i f(-cos theta_i) <= F0 for supplied configurations.
    for (const auto& thetas : cfg.extra_configs) {
      if (thetas.empty()) continue;
      std::vector<double> row(nv, 0.0);
      row[0] = -1.0;
      for (double th : thetas) {
        double x = -std::cos(th * 3.14159265358979323846 / 180.0);
        for (int k = 0; k < d; ++k) row[c_index(k + 1)] += gegenbauer(cfg.n, k + 1)(x);
      }
      lp.add_row(std::move(row), Relation::kLe, -double(thetas.size()));
    }
  }
  return lp;
}

SearchResult search(const SearchConfig& cfg) {
  LinearProgram lp = build_lp(cfg);
  LpSolution sol = solve(lp);
  if (sol.status == LpStatus::kInfeasible)
    throw std::runtime_error(
        "search: LP infeasible (n=" + std::to_string(cfg.n) +
        ", t0=" + format_real(cfg.t0) + ", d=" + std::to_string(cfg.d) +
        ", N=" + std::to_string(cfg.N) + ")");
  if (sol.status == LpStatus::kUnbounded)
    throw std::runtime_error("search: LP unbounded (missing constraints?)");

  const bool delsarte = cfg.t0 == 1.0;
  SearchResult res;
  res.lp_residual = max_violation(lp, sol.x);
  res.expansion.n = cfg.n;
  res.expansion.c.assign(cfg.d + 1, 0.0);
  res.expansion.c[0] = 1.0;
  double csum = 0.0;
  for (int k = 1; k <= cfg.d; ++k) {
    double ck = std::max(0.0, sol.x[delsarte ? k - 1 : k]);
    res.expansion.c[k] = ck;
    csum += ck;
  }
  res.F0 = delsarte ? 0.0 : sol.x[0];
  res.E = res.F0 + 1.0 + csum;
  // Exact assembly of the clamped expansion keeps admissibility exact under
  // re-expansion.
  {
    std::vector<Rational> ce;
    for (double ck : res.expansion.c) ce.push_back(rational_from_double(ck));
    res.f_exact = from_gegenbauer_exact(cfg.n, ce);
  }
  res.f = Polynomial(res.f_exact.to_doubles());

  // Post-hoc continuous certification; the LP grid is advisory only.
  ExtensionPolynomial ep;
  ExtensionError err;
  if (validate_extension(res.f_exact, cfg.n,
                         rational_from_double(cfg.z), &ep, &err)) {
    res.certified = true;
    res.sign_cert = ep.sign_cert;
    res.monotone_cert = ep.monotone_cert;
    res.t0_realized = ep.delsarte_mode ? 1.0 : ep.t0();
  }
  return res;
}

std::string SearchConfig::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["z"] = z;
  j["t0"] = t0;
  j["d"] = d;
  j["N"] = N;
  j["strict_margin"] = strict_margin;
  return j.dump(2);
}

SearchConfig SearchConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SearchConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.z = j.at("z").get<double>();
  cfg.t0 = j.at("t0").get<double>();
  cfg.d = j.at("d").get<int>();
  cfg.N = j.at("N").get<int>();
  if (j.contains("strict_margin"))
    cfg.strict_margin = j["strict_margin"].get<double>();
  return cfg;
}

std::string SearchResult::to_json() const {
  std::string out = "{\"c\":[";
  for (size_t k = 0; k < expansion.c.size(); ++k) {
    if (k) out += ',';
    out += format_real(expansion.c[k]);
  }
  out += "],\"monomial\":[";
  for (int k = 0; k <= f.degree(); ++k) {
    if (k) out += ',';
    out += format_real(f.coeff(k));
  }
  out += "],\"F0\":" + format_real(F0) + ",\"E\":" + format_real(E) +
         ",\"certified\":" + (certified ? "true" : "false") +
         ",\"t0_realized\":" + format_real(t0_realized) +
         ",\"lp_residual\":" + format_real(lp_residual) + "}";
  return out;
}

}  // namespace kissing
