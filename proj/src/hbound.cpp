#include "kissing/hbound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

namespace kissing {

namespace {

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

std::vector<std::vector<double>> binomial_table(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

}  // namespace

Polynomial pair_objective(const Polynomial& f, const Polynomial& a,
                          const Polynomial& q2) {
  const int d = f.degree();
  auto C = binomial_table(d);
  std::vector<Polynomial> apow(d + 1), qpow(d / 2 + 1);
  apow[0] = Polynomial::constant(1.0);
  for (int k = 1; k <= d; ++k) apow[k] = apow[k - 1] * a;
  qpow[0] = Polynomial::constant(1.0);
  for (int k = 1; k <= d / 2; ++k) qpow[k] = qpow[k - 1] * q2;

  Polynomial acc;
  for (int k = 0; k <= d; ++k) {
    double fk = f.coeff(k);
    if (fk == 0.0) continue;
    for (int i = 0; i <= k; i += 2)
      acc = acc + (apow[k - i] * qpow[i / 2]).scaled(2.0 * fk * C[k][i]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// F1 and the closed h values
// ---------------------------------------------------------------------------

F1Result F1(const ExtensionPolynomial& ep, double psi_deg) {
  const double delta_deg = rad2deg(std::acos(ep.z));
  const double theta0 = ep.theta0_deg();
  if (psi_deg < delta_deg - 1e-9 || psi_deg > 2.0 * theta0 + 1e-9)
    throw std::invalid_argument("F1: psi outside [delta, 2 theta0]");
  psi_deg = std::clamp(psi_deg, delta_deg, 2.0 * theta0);

  const double half = deg2rad(psi_deg) / 2.0;
  const double A = std::cos(half), B = std::sin(half);
  Polynomial a({0.0, -A});
  Polynomial q2({B * B, 0.0, -B * B});
  Polynomial omega = pair_objective(ep.f, a, q2);

  const double s_lo = std::cos(deg2rad(theta0) - half);
  std::vector<double> cands = {s_lo, 1.0};
  for (double r : real_roots_fast(omega.derivative(), s_lo, 1.0))
    if (r > s_lo && r < 1.0) cands.push_back(r);

  double best_v = -HUGE_VAL, best_s = s_lo;
  for (double s : cands) {
    double v = omega(s);
    if (v > best_v || (v == best_v && s > best_s)) {  // smaller angle wins
      best_v = v;
      best_s = s;
    }
  }
  return {best_v, psi_deg / 2.0 + rad2deg(std::acos(clamp1(best_s)))};
}

std::pair<double, double> h01(const ExtensionPolynomial& ep) {
  double h0 = ep.f(1.0);
  return {h0, h0 + ep.f(-1.0)};
}

double h2(const ExtensionPolynomial& ep) {
  return ep.f(1.0) + F1(ep, rad2deg(std::acos(ep.z))).value;
}

// ---------------------------------------------------------------------------
// n = 3 grid methods
// ---------------------------------------------------------------------------

namespace {

// F2(psi) = max of f(1) + f(-cos theta1) + f(-cos theta2) with theta3 = psi
// fixed, theta1/theta2 at vertex angles V -/+ u from the triangle median.
double f2_of_psi(const ExtensionPolynomial& ep, double psi_deg,
                 double* th1_deg = nullptr, double* th2_deg = nullptr) {
  const double z = ep.z;
  const double delta = std::acos(z);
  const double vhalf = std::acos(std::sqrt((1 + 2 * z) / (2 * (1 + z))));
  const double psi = deg2rad(psi_deg);
  double cos_u0_arg = clamp1((1 - z) / std::tan(psi) / std::sin(delta));
  double u0 = std::max(0.0, std::acos(cos_u0_arg) - vhalf);

  const double p0 = z * std::cos(psi);
  const double sp = std::sin(delta) * std::sin(psi);
  Polynomial a({-p0, -sp * std::cos(vhalf)});
  const double b = sp * std::sin(vhalf);
  Polynomial q2({b * b, 0.0, -b * b});
  Polynomial obj = pair_objective(ep.f, a, q2);
  MaxResult mx = max_on_interval(obj, std::cos(u0), 1.0);
  if (th1_deg != nullptr) {
    double sv = clamp1(mx.argmax);
    double root = std::sqrt(std::max(0.0, 1.0 - sv * sv));
    double x1 = p0 + sp * (std::cos(vhalf) * sv - std::sin(vhalf) * root);
    double x2 = p0 + sp * (std::cos(vhalf) * sv + std::sin(vhalf) * root);
    *th1_deg = rad2deg(std::acos(clamp1(x1)));
    *th2_deg = rad2deg(std::acos(clamp1(x2)));
  }
  return ep.f(1.0) + mx.value;
}

}  // namespace

std::vector<double> h3_default_grid_deg(const ExtensionPolynomial& ep) {
  const double z = ep.z;
  const double r0 = rad2deg(std::acos(std::sqrt((1 + 2 * z) / 3.0)));
  const double theta0 = ep.theta0_deg();
  std::vector<double> grid;
  if (std::fabs(z - 0.5) < 1e-12 && theta0 > 48.0) {
    grid = {r0, 38.0, 41.0, 44.0, 48.0, theta0};
  } else {
    for (int i = 0; i <= 20; ++i) grid.push_back(r0 + (theta0 - r0) * i / 20.0);
  }
  return grid;
}

H3GridResult h3_triangle_n3(const ExtensionPolynomial& ep) {
  return h3_triangle_n3(ep, h3_default_grid_deg(ep));
}

H3GridResult h3_triangle_n3(const ExtensionPolynomial& ep,
                            const std::vector<double>& psi_grid_deg) {
  const double z = ep.z;
  const double r0 = rad2deg(std::acos(std::sqrt((1 + 2 * z) / 3.0)));
  const double theta0 = ep.theta0_deg();
  if (r0 > theta0 + 1e-9)
    throw std::invalid_argument("h3: circumradius exceeds theta0");
  if (psi_grid_deg.size() < 2 || psi_grid_deg.front() < r0 - 1e-9 ||
      psi_grid_deg.back() > theta0 + 1e-9)
    throw std::invalid_argument("h3: grid must span [R0, theta0]");

  H3GridResult res;
  res.grid_deg = psi_grid_deg;
  res.value = -HUGE_VAL;
  size_t arg = 0;
  for (size_t i = 0; i + 1 < psi_grid_deg.size(); ++i) {
    double w = f2_of_psi(ep, psi_grid_deg[i + 1]) +
               ep.f(-std::cos(deg2rad(psi_grid_deg[i])));
    res.cell_values.push_back(w);
    if (w > res.value) {
      res.value = w;
      arg = i;
    }
  }
  {
    double th1, th2;
    f2_of_psi(ep, psi_grid_deg[arg + 1], &th1, &th2);
    res.witness_theta_deg = {th1, th2, psi_grid_deg[arg + 1]};
  }
  return res;
}

double rho_diagonal(double s_deg, double z) {
  double c = z / std::cos(deg2rad(s_deg) / 2.0);
  if (c > 1.0 || c < -1.0)
    throw std::invalid_argument("rho_diagonal: no rhomb with this diagonal");
  return 2.0 * rad2deg(std::acos(c));
}

H4RhombResult h4_rhomb_n3(const ExtensionPolynomial& ep) {
  const double theta0 = ep.theta0_deg();
  // The short diagonal joins two code points, so it cannot drop below delta.
  double lo = std::max(rho_diagonal(2.0 * theta0, ep.z),
                       rad2deg(std::acos(ep.z)));
  std::vector<double> grid;
  if (std::fabs(ep.z - 0.5) < 1e-12 && lo < 77.0) {
    grid = {lo, 77.0, 90.0};
  } else {
    grid = {lo};
    for (int i = 1; i <= 6; ++i) grid.push_back(lo + (90.0 - lo) * i / 6.0);
  }
  return h4_rhomb_n3(ep, grid);
}

H4RhombResult h4_rhomb_n3(const ExtensionPolynomial& ep,
                          const std::vector<double>& d1_grid_deg) {
  const double theta0 = ep.theta0_deg();
  if (2.0 * theta0 < 90.0 - 1e-9)
    throw std::invalid_argument("h4: no rhomb fits inside the cap");
  H4RhombResult res;
  res.value = -HUGE_VAL;
  for (size_t i = 0; i + 1 < d1_grid_deg.size(); ++i) {
    double a = d1_grid_deg[i], b = d1_grid_deg[i + 1];
    F1Result fa = F1(ep, a);
    F1Result fb = F1(ep, rho_diagonal(b, ep.z));
    double w = ep.f(1.0) + fa.value + fb.value;
    res.case_values.push_back(w);
    if (w > res.value) {
      res.value = w;
      double d2 = rho_diagonal(b, ep.z);
      res.witness_theta_deg = {fa.theta_deg, a - fa.theta_deg, fb.theta_deg,
                               d2 - fb.theta_deg};
    }
  }
  return res;
}

namespace {

// Spherical rhomb with side arccos z: diagonals d1, d2 = rho(d1) meet
// orthogonally at the center.  Vertex coordinates with the center at the
// pole.
void rhomb_vertices(double d1_rad, double d2_rad, double v[4][3]) {
  double h1 = d1_rad / 2.0, h2 = d2_rad / 2.0;
  double out[4][3] = {{std::sin(h1), 0, std::cos(h1)},
                      {0, std::sin(h2), std::cos(h2)},
                      {-std::sin(h1), 0, std::cos(h1)},
                      {0, -std::sin(h2), std::cos(h2)}};
  std::copy(&out[0][0], &out[0][0] + 12, &v[0][0]);
}

}  // namespace

H4RhombResult h4_rhomb_bnb(const ExtensionPolynomial& ep, double floor_deg) {
  const double z = ep.z;
  const double theta0 = deg2rad(ep.theta0_deg());
  const double delta = std::acos(z);
  double d1_lo = std::max(deg2rad(rho_diagonal(rad2deg(2.0 * theta0), z)), delta);
  double d1_hi = deg2rad(90.0);
  if (d1_lo > d1_hi) throw std::runtime_error("h4: no rhomb fits inside the cap");

  std::vector<double> rc(ep.f.coeffs());
  for (size_t k = 1; k < rc.size(); k += 2) rc[k] = -rc[k];
  Polynomial f_neg(rc);  // f(-t) in t

  struct Box {
    double d1a, d1b, ra, rb, pa, pb;  // diagonal, radius, azimuth (radians)
    double bound;
    int depth;
  };

  // |d(d2/2) / d(d1)| = tan(d1/2) / (2 tan(d2/2)), increasing in d1.
  auto half_speed2 = [&](double d1) {
    double d2 = deg2rad(rho_diagonal(rad2deg(d1), z));
    return std::tan(d1 / 2.0) / (2.0 * std::tan(d2 / 2.0));
  };

  double best_lb = -HUGE_VAL;
  std::array<double, 4> best_witness{};

  auto config_value = [&](double d1, double r, double phi,
                          std::array<double, 4>* thetas) {
    double d2 = deg2rad(rho_diagonal(rad2deg(d1), z));
    double v[4][3];
    rhomb_vertices(d1, d2, v);
    double e0[3] = {std::sin(r) * std::cos(phi), std::sin(r) * std::sin(phi),
                    std::cos(r)};
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      double dot = clamp1(e0[0] * v[i][0] + e0[1] * v[i][1] + e0[2] * v[i][2]);
      double th = std::acos(dot);
      if (th > theta0 + 1e-12) return -HUGE_VAL;
      (*thetas)[i] = th;
      acc += f_neg(dot);
    }
    return acc;
  };

  auto bound_of = [&](Box& b) {
    double d1c = 0.5 * (b.d1a + b.d1b), rc2 = 0.5 * (b.ra + b.rb),
           pc = 0.5 * (b.pa + b.pb);
    double d2c = deg2rad(rho_diagonal(rad2deg(d1c), z));
    double v[4][3];
    rhomb_vertices(d1c, d2c, v);
    double e0[3] = {std::sin(rc2) * std::cos(pc), std::sin(rc2) * std::sin(pc),
                    std::cos(rc2)};
    // e0 can move by at most dr/2 + sin(r_max) dphi/2; vertices by the
    // half-diagonal speeds times dd1/2 (triangle inequality on the sphere).
    double e0_pad = 0.5 * (b.rb - b.ra) + std::sin(b.rb) * 0.5 * (b.pb - b.pa);
    double pad13 = 0.25 * (b.d1b - b.d1a) + e0_pad;
    double pad24 = half_speed2(b.d1b) * 0.5 * (b.d1b - b.d1a) + e0_pad;
    double acc = 0.0;
    bool feasible = false;
    double worst_infeas = 0.0;
    for (int i = 0; i < 4; ++i) {
      double pad = (i % 2 == 0) ? pad13 : pad24;
      double th = std::acos(clamp1(e0[0] * v[i][0] + e0[1] * v[i][1] +
                                   e0[2] * v[i][2]));
      worst_infeas = std::max(worst_infeas, th - pad - theta0);
      acc += f_neg(std::cos(std::max(0.0, th - pad)));
    }
    feasible = worst_infeas <= 0.0;
    b.bound = feasible ? acc : -HUGE_VAL;
    // Lower-bound witness from the cell center.
    std::array<double, 4> thetas{};
    double val = config_value(d1c, rc2, pc, &thetas);
    if (val > best_lb) {
      best_lb = val;
      best_witness = thetas;
    }
    return feasible;
  };

  auto cmp = [](const Box& a, const Box& b) { return a.bound < b.bound; };
  std::priority_queue<Box, std::vector<Box>, decltype(cmp)> heap(cmp);
  {
    Box root{d1_lo, d1_hi, 0.0, theta0, 0.0, kPi / 2.0, 0.0, 0};
    if (bound_of(root)) heap.push(root);
  }
  const double floor_rad = deg2rad(floor_deg);
  H4RhombResult res;
  res.value = -HUGE_VAL;
  while (!heap.empty()) {
    Box b = heap.top();
    heap.pop();
    double wd = b.d1b - b.d1a, wr = b.rb - b.ra, wp = (b.pb - b.pa) * std::sin(b.rb);
    if (std::max({wd, wr, wp}) <= floor_rad) {
      res.value = ep.f(1.0) + b.bound;
      for (double th : best_witness) res.witness_theta_deg.push_back(rad2deg(th));
      return res;
    }
    if (b.bound < best_lb) continue;
    int axis = wd >= wr && wd >= wp ? 0 : (wr >= wp ? 1 : 2);
    for (int half = 0; half < 2; ++half) {
      Box c = b;
      c.depth = b.depth + 1;
      double mid;
      if (axis == 0) {
        mid = 0.5 * (b.d1a + b.d1b);
        (half ? c.d1a : c.d1b) = mid;
      } else if (axis == 1) {
        mid = 0.5 * (b.ra + b.rb);
        (half ? c.ra : c.rb) = mid;
      } else {
        mid = 0.5 * (b.pa + b.pb);
        (half ? c.pa : c.pb) = mid;
      }
      if (!bound_of(c)) continue;
      c.bound = std::min(c.bound, b.bound);
      if (c.bound >= best_lb) heap.push(c);
    }
  }
  // Unreachable: the cell chain holding the maximizer can never be pruned.
  throw std::logic_error("h4_rhomb_bnb: search queue exhausted");
}

// ---------------------------------------------------------------------------
// Simplex-slice branch and bound (first method of the h_m computation)
// ---------------------------------------------------------------------------

namespace {

struct SliceGeom {
  int m;
  double qa, qc;  // q(t) = qa * sum t^2 - qc * (sum t)^2; surface q = 1
  double t0, theta0_rad;
  const Polynomial* f;
  Polynomial f_neg;       // f(-t) as a polynomial in t
  Polynomial f_neg_deriv;
};

struct Cell {
  int depth = 0;
  std::array<double, 4> tlo{}, thi{};  // theta intervals per axis (radians)
  double bound = 0.0;
  double lam = 8.0;  // warm start for the dual multiplier
};

double cell_b1(const SliceGeom& g, const Cell& c) {
  double acc = 0.0;
  for (int k = 0; k < g.m; ++k) acc += g.f_neg(std::cos(c.tlo[k]));
  return acc;
}

bool cell_feasible(const SliceGeom& g, const Cell& c) {
  // Ordering filter: representative cells with theta_1 <= ... <= theta_m.
  for (int k = 0; k + 1 < g.m; ++k)
    if (c.tlo[k] > c.thi[k + 1]) return false;
  double sum_l = 0.0, sum_u = 0.0, sq_l = 0.0, sq_u = 0.0;
  for (int k = 0; k < g.m; ++k) {
    double l = std::cos(c.thi[k]), u = std::cos(c.tlo[k]);
    sum_l += l;
    sum_u += u;
    sq_l += l * l;
    sq_u += u * u;
  }
  double q_lo = g.qa * sq_l - g.qc * sum_u * sum_u;
  return q_lo <= 1.0;
}

// Lagrangian chord bound; sound for every lambda >= 0.
double cell_dual_at(const SliceGeom& g, const Cell& c, double lambda) {
  double sl = 0.0, su = 0.0;
  for (int k = 0; k < g.m; ++k) {
    sl += std::cos(c.thi[k]);
    su += std::cos(c.tlo[k]);
  }
  double beta = lambda * g.qc * (sl + su);
  double alpha = -lambda * g.qc * sl * su;
  double acc = lambda + alpha;
  for (int k = 0; k < g.m; ++k) {
    Polynomial gk = g.f_neg + Polynomial({0.0, beta, -lambda * g.qa});
    acc += max_on_interval(gk, std::cos(c.thi[k]), std::cos(c.tlo[k])).value;
  }
  return acc;
}

// Warm-started dual minimization over lambda; any lambda is sound, so a few
// probes around the parent's multiplier suffice.
double cell_dual(const SliceGeom& g, Cell& c) {
  double best = HUGE_VAL, best_l = c.lam;
  for (double l : {0.0, 0.5 * c.lam, c.lam, 2.0 * c.lam}) {
    double v = cell_dual_at(g, c, l);
    if (v < best) {
      best = v;
      best_l = l;
    }
  }
  double a = best_l / 2.0, b = best_l == 0.0 ? 0.5 : best_l * 2.0;
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = cell_dual_at(g, c, x1), f2 = cell_dual_at(g, c, x2);
  for (int it = 0; it < 8; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = cell_dual_at(g, c, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = cell_dual_at(g, c, x2);
    }
  }
  if (f1 < best) {
    best = f1;
    best_l = x1;
  }
  if (f2 < best) {
    best = f2;
    best_l = x2;
  }
  c.lam = std::max(best_l, 1e-3);
  return best;
}

}  // namespace

double h_simplex_triangulation(const ExtensionPolynomial& ep, int m,
                               double eps_deg,
                               std::vector<double>* witness_theta_deg) {
  if (m < 2 || m > ep.n)
    throw std::invalid_argument("h_simplex_triangulation: need 2 <= m <= n");
  if (m > 4) throw std::invalid_argument("h_simplex_triangulation: m > 4");
  if (eps_deg <= 0.0) throw std::invalid_argument("eps must be positive");

  SliceGeom g;
  g.m = m;
  const double z = ep.z;
  g.qa = 1.0 / (1.0 - z);
  g.qc = z / ((1.0 - z) * (1.0 + (m - 1) * z));
  g.t0 = ep.t0();
  g.theta0_rad = deg2rad(ep.theta0_deg());
  g.f = &ep.f;
  {
    std::vector<double> rc(ep.f.coeffs());
    for (size_t k = 1; k < rc.size(); k += 2) rc[k] = -rc[k];
    g.f_neg = Polynomial(rc);
    g.f_neg_deriv = g.f_neg.derivative();
  }

  const double eps_rad = deg2rad(eps_deg);
  const double side0 = g.theta0_rad;
  int levels_per_axis =
      std::max(0, static_cast<int>(std::ceil(
                      std::log2(side0 * std::sqrt(double(m)) / eps_rad))));
  const int floor_depth = levels_per_axis * m;
  // The corner bound alone has a first-order gap that keeps huge shells of
  // cells alive, so the dual bound engages as soon as cells are modest.
  const int dual_depth = std::min(2 * m, std::max(0, floor_depth - 10 * m));

  auto bound_of = [&](Cell& c) {
    double b1 = cell_b1(g, c);
    if (c.depth >= dual_depth) b1 = std::min(b1, cell_dual(g, c));
    c.bound = b1;
  };

  auto cmp = [](const Cell& a, const Cell& b) { return a.bound < b.bound; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  Cell root;
  root.depth = 0;
  for (int k = 0; k < m; ++k) {
    root.tlo[k] = 0.0;
    root.thi[k] = side0;
  }
  double lb = -HUGE_VAL;

  std::array<double, 4> best_witness{};
  auto try_witness = [&](const std::array<double, 4>& th) {
    double t[4], s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < m; ++k) {
      t[k] = std::cos(th[k]);
      s1 += t[k];
      s2 += t[k] * t[k];
    }
    double q = g.qa * s2 - g.qc * s1 * s1;
    if (q <= 0.0) return;
    double s = 1.0 / std::sqrt(q);
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
      double ts = t[k] * s;
      if (ts < g.t0 - 1e-15 || ts > 1.0 + 1e-15) return;
      acc += g.f_neg(std::min(ts, 1.0));
    }
    if (acc > lb) {
      lb = acc;
      for (int k = 0; k < m; ++k)
        best_witness[k] = std::acos(std::clamp(t[k] * s, -1.0, 1.0));
    }
  };

  // Seed the incumbent with a projected-gradient ascent on the constraint
  // surface; a near-optimal witness makes the dual bounds prune immediately.
  {
    std::array<double, 4> t{};
    double s1 = 0.0;
    for (int k = 0; k < m; ++k) t[k] = 0.5 * (g.t0 + 1.0);
    auto project = [&](std::array<double, 4>& v) {
      double a1 = 0.0, a2 = 0.0;
      for (int k = 0; k < m; ++k) {
        a1 += v[k];
        a2 += v[k] * v[k];
      }
      double q = g.qa * a2 - g.qc * a1 * a1;
      if (q <= 0.0) return false;
      double s = 1.0 / std::sqrt(q);
      for (int k = 0; k < m; ++k) v[k] = std::clamp(v[k] * s, g.t0, 1.0);
      return true;
    };
    project(t);
    double step = 0.05;
    double cur = -HUGE_VAL;
    for (int it = 0; it < 400 && step > 1e-9; ++it) {
      s1 = 0.0;
      for (int k = 0; k < m; ++k) s1 += t[k];
      std::array<double, 4> grad{}, nq{};
      double gn = 0.0;
      for (int k = 0; k < m; ++k) {
        grad[k] = g.f_neg_deriv(t[k]);
        nq[k] = 2.0 * (g.qa * t[k] - g.qc * s1);
        gn += nq[k] * nq[k];
      }
      double dot = 0.0;
      for (int k = 0; k < m; ++k) dot += grad[k] * nq[k];
      std::array<double, 4> cand = t;
      for (int k = 0; k < m; ++k)
        cand[k] += step * (grad[k] - dot / std::max(gn, 1e-12) * nq[k]);
      if (!project(cand)) {
        step *= 0.5;
        continue;
      }
      double val = 0.0;
      bool feas = true;
      double c1 = 0.0, c2 = 0.0;
      for (int k = 0; k < m; ++k) {
        c1 += cand[k];
        c2 += cand[k] * cand[k];
      }
      if (std::fabs(g.qa * c2 - g.qc * c1 * c1 - 1.0) > 1e-12) feas = false;
      for (int k = 0; k < m && feas; ++k) val += g.f_neg(cand[k]);
      if (feas && val > cur) {
        cur = val;
        t = cand;
      } else {
        step *= 0.5;
      }
    }
    std::array<double, 4> th{};
    for (int k = 0; k < m; ++k) th[k] = std::acos(std::clamp(t[k], -1.0, 1.0));
    try_witness(th);
    (void)cur;
  }

  bound_of(root);
  if (!cell_feasible(g, root))
    throw std::runtime_error("h_simplex_triangulation: empty domain");
  queue.push(root);

  // Bounds are forced monotone along refinement chains, so with a max-heap
  // the first floor-level cell popped carries exactly the uniform-grid value.
  auto emit_witness = [&]() {
    if (witness_theta_deg == nullptr) return;
    witness_theta_deg->clear();
    if (lb == -HUGE_VAL) return;
    for (int k = 0; k < m; ++k)
      witness_theta_deg->push_back(rad2deg(best_witness[k]));
  };
  while (!queue.empty()) {
    Cell c = queue.top();
    queue.pop();
    if (c.depth >= floor_depth) {
      emit_witness();
      return ep.f(1.0) + c.bound;
    }
    if (c.bound < lb) continue;
    int axis = c.depth % m;
    double mid = 0.5 * (c.tlo[axis] + c.thi[axis]);
    for (int half = 0; half < 2; ++half) {
      Cell ch = c;
      ch.depth = c.depth + 1;
      (half == 0 ? ch.thi[axis] : ch.tlo[axis]) = mid;
      if (!cell_feasible(g, ch)) continue;
      std::array<double, 4> center{};
      for (int k = 0; k < m; ++k) center[k] = 0.5 * (ch.tlo[k] + ch.thi[k]);
      try_witness(center);
      try_witness(ch.tlo);
      bound_of(ch);
      ch.bound = std::min(ch.bound, c.bound);
      if (ch.bound >= lb) queue.push(ch);
    }
  }
  emit_witness();
  return ep.f(1.0) + lb;
}

// ---------------------------------------------------------------------------
// Power-sum method (second method; n = 4, degree 9, f6 = f8 = 0)
// ---------------------------------------------------------------------------

namespace {

// a(w) + b(w) sqrt(R(w)) with a shared radicand R.
struct SqrtExpr {
  Polynomial a, b;
};

SqrtExpr se_mul(const SqrtExpr& x, const SqrtExpr& y, const Polynomial& R) {
  return {x.a * y.a + (x.b * y.b) * R, x.a * y.b + x.b * y.a};
}

SqrtExpr se_compose(const Polynomial& f, const SqrtExpr& t, const Polynomial& R) {
  SqrtExpr acc{Polynomial::constant(f.coeff(f.degree())), Polynomial()};
  for (int k = f.degree() - 1; k >= 0; --k) {
    acc = se_mul(acc, t, R);
    acc.a = acc.a + Polynomial::constant(f.coeff(k));
  }
  return acc;
}

// Stationary-point candidates of a(w) + b(w) sqrt(R(w)):
// 4 a'^2 R = (2 b' R + b R')^2 after clearing the radical.
std::vector<double> se_critical(const SqrtExpr& e, const Polynomial& R,
                                double lo, double hi) {
  Polynomial ap = e.a.derivative(), bp = e.b.derivative(), Rp = R.derivative();
  Polynomial lhs = (ap * ap) * R;
  Polynomial rhs = bp * R * Polynomial::constant(2.0) + e.b * Rp;
  Polynomial cand = lhs.scaled(4.0) - rhs * rhs;
  std::vector<double> out = real_roots_fast(cand, lo, hi);
  for (double r : real_roots_fast(R, lo, hi)) out.push_back(r);
  return out;
}

struct PsCurve {
  // Reconstructs the t-configuration at w; returns false if invalid there.
  std::function<bool(double, std::vector<double>&)> config;
  SqrtExpr expr;       // objective sum f(-t_i) as a + b sqrt(R)
  Polynomial radicand;
};

double powersum_w2(int m, double z) { return std::sqrt(m * (m - 1) * z + m); }

double powersum_w1(int m, double z, double t0) {
  // t1 from the ellipsoid with t2 = ... = tm = t0.
  double c = z / ((m - 1) * z + 1);
  double A = 1 - c;
  double B = -2 * c * (m - 1) * t0;
  double Cc = (m - 1) * t0 * t0 * (1 - c * (m - 1)) - (1 - z);
  double disc = B * B - 4 * A * Cc;
  if (disc < 0) throw std::runtime_error("powersum: empty omega range");
  double t1 = (-B + std::sqrt(disc)) / (2 * A);
  return t1 + (m - 1) * t0;
}

// Phi_3(w, s3) as a cubic in s3 via Newton's identities (m = 3).
double phi3_at(const Polynomial& f, double z, double w, double s3) {
  double s1 = w;
  double s2 = z / (2 * z + 1) * w * w + 1 - z;
  double e1 = s1;
  double e2 = (s1 * s1 - s2) / 2;
  double e3 = (s3 - e1 * s2 + e2 * s1) / 3;
  std::vector<double> s(10, 0.0);
  s[1] = s1;
  s[2] = s2;
  s[3] = s3;
  for (int k = 4; k <= 9; ++k)
    s[k] = e1 * s[k - 1] - e2 * s[k - 2] + e3 * s[k - 3];
  double acc = f(1.0) + 3 * f.coeff(0);
  double sign = -1.0;
  for (int k = 1; k <= 9; ++k, sign = -sign) acc += sign * f.coeff(k) * s[k];
  return acc;
}

}  // namespace

PowersumResult h_simplex_powersum(const ExtensionPolynomial& ep, int m) {
  if (ep.n != 4) throw std::runtime_error("lemma hypotheses violated: n != 4");
  if (m != 3 && m != 4)
    throw std::invalid_argument("h_simplex_powersum: m must be 3 or 4");
  const Polynomial& f = ep.f;
  if (f.degree() != 9 || f.coeff(9) <= 0.0 || f.coeff(6) != 0.0 ||
      f.coeff(8) != 0.0)
    throw std::runtime_error(
        "lemma hypotheses violated: need degree 9 with f9 > 0, f6 = f8 = 0");
  if (m == 3 && !(f.coeff(7) > -15.0 * f.coeff(9) / 7.0))
    throw std::runtime_error("lemma hypotheses violated: f7 <= -15 f9 / 7");

  const double z = ep.z;
  const double t0 = ep.t0();
  const double w1 = powersum_w1(m, z, t0);
  const double w2 = powersum_w2(m, z);
  if (w1 > w2 + 1e-12) throw std::runtime_error("powersum: empty omega range");
  Polynomial sigma({1 - z, 0.0, z / ((m - 1) * z + 1)});

  double best = -HUGE_VAL;
  std::vector<double> best_t;

  auto consider = [&](double w, const std::vector<double>& t) {
    double acc = ep.f(1.0);
    for (double ti : t) acc += ep.f(-ti);
    if (acc > best) {
      best = acc;
      best_t = t;
    }
    (void)w;
  };

  auto scan_curve = [&](const Polynomial& R,
                        const SqrtExpr& expr,
                        const std::function<bool(double, std::vector<double>&)>& config) {
    std::vector<double> cands = {w1, w2};
    for (double r : se_critical(expr, R, w1, w2)) cands.push_back(r);
    for (double w : cands) {
      if (w < w1 - 1e-12 || w > w2 + 1e-12) continue;
      std::vector<double> t;
      if (!config(w, t)) continue;
      consider(w, t);
    }
    (void)expr;
  };

  if (m == 3) {
    // Lemma condition: F'_w(s3) <= 0 at the lower end of the s3 range.
    for (int i = 0; i <= 128; ++i) {
      double w = w1 + (w2 - w1) * i / 128.0;
      double sg = sigma(w);
      double Dq = 6 * sg - 2 * w * w;
      double l3;
      if (Dq >= 0 && (w - std::sqrt(Dq)) / 3.0 >= t0) {
        double D = std::sqrt(Dq);
        double u = (2 * w + D) / 6.0, t3 = (w - D) / 3.0;
        l3 = 2 * u * u * u + t3 * t3 * t3;
      } else {
        double P = (w - t0) / 2.0;
        double Q2 = (sg - t0 * t0) / 2.0 - P * P;
        if (Q2 < 0) continue;
        double Q = std::sqrt(Q2);
        double a = P + Q, b = P - Q;
        l3 = t0 * t0 * t0 + a * a * a + b * b * b;
      }
      double h = 1e-6;
      double deriv = (phi3_at(f, z, w, l3 + h) - phi3_at(f, z, w, l3 - h)) / (2 * h);
      if (deriv > 1e-5)
        throw std::runtime_error(
            "lemma hypotheses violated: F'_w positive at l3");
    }

    // Branch A: boundary configurations t3 = t0, t1/t2 = P +/- sqrt(Q2).
    Polynomial P({-t0 / 2.0, 0.5});
    Polynomial Q2 = (sigma - Polynomial::constant(t0 * t0)).scaled(0.5) - P * P;
    {
      SqrtExpr expr = se_compose(f, SqrtExpr{P.scaled(-1.0), Polynomial::constant(-1.0)}, Q2);
      SqrtExpr expr2 = se_compose(f, SqrtExpr{P.scaled(-1.0), Polynomial::constant(1.0)}, Q2);
      SqrtExpr sum{expr.a + expr2.a, expr.b + expr2.b};
      auto config = [&](double w, std::vector<double>& t) {
        double q2 = Q2(w);
        if (q2 < -1e-15) return false;
        double Q = std::sqrt(std::max(0.0, q2));
        double pa = P(w);
        double t1 = pa + Q, t2 = pa - Q;
        if (t2 < t0 - 1e-9 || t1 > 1.0 + 1e-9) return false;
        t = {t1, t2, t0};
        return true;
      };
      // boundary candidates where t2 = t0 or t1 = 1
      Polynomial b1 = P - Polynomial::constant(t0);
      Polynomial b2 = Polynomial::constant(1.0) - P;
      Polynomial e1 = b1 * b1 - Q2, e2 = b2 * b2 - Q2;
      std::vector<double> extra;
      for (double r : real_roots_fast(e1, w1, w2)) extra.push_back(r);
      for (double r : real_roots_fast(e2, w1, w2)) extra.push_back(r);
      scan_curve(Q2, sum, config);
      for (double w : extra) {
        std::vector<double> t;
        if (config(w, t)) consider(w, t);
      }
    }
    // Branch B: interior critical points t1 = t2 = (2w + D)/6, t3 = (w - D)/3.
    {
      Polynomial R = sigma.scaled(6.0) - Polynomial({0.0, 0.0, 2.0});
      SqrtExpr tu{Polynomial({0.0, -1.0 / 3.0}), Polynomial::constant(-1.0 / 6.0)};
      SqrtExpr t3{Polynomial({0.0, -1.0 / 3.0}), Polynomial::constant(1.0 / 3.0)};
      SqrtExpr fu = se_compose(f, tu, R);
      SqrtExpr f3 = se_compose(f, t3, R);
      SqrtExpr sum{fu.a.scaled(2.0) + f3.a, fu.b.scaled(2.0) + f3.b};
      auto config = [&](double w, std::vector<double>& t) {
        double r = R(w);
        if (r < -1e-15) return false;
        double D = std::sqrt(std::max(0.0, r));
        double u = (2 * w + D) / 6.0, t3v = (w - D) / 3.0;
        if (t3v < t0 - 1e-9 || u > 1.0 + 1e-9) return false;
        t = {u, u, t3v};
        return true;
      };
      Polynomial bt = Polynomial({-3.0 * t0, 1.0});  // w - 3 t0 = D boundary
      Polynomial eb = bt * bt - R;
      scan_curve(R, sum, config);
      for (double w : real_roots_fast(eb, w1, w2)) {
        std::vector<double> t;
        if (config(w, t)) consider(w, t);
      }
    }
  } else {  // m == 4
    // q1: t1 = t2 = u, t3 = t4 = v.
    {
      Polynomial disc = sigma - Polynomial({0.0, 0.0, 0.25});
      Polynomial a({0.0, -0.25});
      Polynomial q2 = disc.scaled(0.25);
      Polynomial pairs = pair_objective(f, a, q2);
      auto config = [&](double w, std::vector<double>& t) {
        double d = disc(w);
        if (d < -1e-15) return false;
        double s = std::sqrt(std::max(0.0, d));
        double u = w / 4.0 + s / 2.0, v = w / 4.0 - s / 2.0;
        t = {u, u, v, v};
        return true;
      };
      SqrtExpr as_expr{pairs.scaled(2.0), Polynomial()};
      scan_curve(disc, as_expr, config);
    }
    // q2 / q3: three coordinates equal.
    Polynomial R = sigma.scaled(12.0) - Polynomial({0.0, 0.0, 3.0});
    for (double sgn : {1.0, -1.0}) {
      SqrtExpr tu{Polynomial({0.0, -0.25}), Polynomial::constant(-sgn / 12.0)};
      SqrtExpr ts{Polynomial({0.0, -0.25}), Polynomial::constant(sgn / 4.0)};
      SqrtExpr fu = se_compose(f, tu, R);
      SqrtExpr fs = se_compose(f, ts, R);
      SqrtExpr sum{fu.a.scaled(3.0) + fs.a, fu.b.scaled(3.0) + fs.b};
      auto config = [&](double w, std::vector<double>& t) {
        double r = R(w);
        if (r < -1e-15) return false;
        double gq = std::sqrt(std::max(0.0, r));
        double u = (3 * w + sgn * gq) / 12.0;
        double single = (w - sgn * gq) / 4.0;
        t = {u, u, u, single};
        return true;
      };
      scan_curve(R, sum, config);
    }
  }

  if (best == -HUGE_VAL)
    throw std::runtime_error("powersum: no feasible configuration");
  PowersumResult res;
  res.value = best;
  for (double t : best_t)
    res.witness_theta_deg.push_back(rad2deg(std::acos(clamp1(t))));
  std::sort(res.witness_theta_deg.begin(), res.witness_theta_deg.end());
  return res;
}

// ---------------------------------------------------------------------------
// lambda, F_arc, h5, h6
// ---------------------------------------------------------------------------

double lambda_angle(double alpha_deg) {
  if (alpha_deg <= 60.0 - 1e-9 || alpha_deg >= 120.0 + 1e-9)
    throw std::invalid_argument("lambda_angle: alpha outside (60, 120)");
  double ca = std::cos(deg2rad(alpha_deg));
  double den = 1.0 + 2.0 * ca;
  if (std::fabs(den) < 1e-12)
    throw std::invalid_argument("lambda_angle: singular at cos a = -1/2");
  double cb = -ca / den;
  if (cb > 1.0 + 1e-12 || cb < -1.0 - 1e-12)
    throw std::invalid_argument("lambda_angle: no real companion diagonal");
  return rad2deg(std::acos(clamp1(cb)));
}

double lambda_angle_z(double alpha_deg, double z) {
  double ca = std::cos(deg2rad(alpha_deg));
  double den = 1.0 + ca - 2.0 * z * z;
  if (std::fabs(den) < 1e-12)
    throw std::invalid_argument("lambda_angle_z: singular configuration");
  double cb = 2.0 * z * z - 1.0 + 4.0 * z * z * (1.0 - z) * (1.0 - z) / den;
  if (cb < -1.0 - 1e-9 || cb > 1.0 + 1e-9)
    throw std::invalid_argument("lambda_angle_z: no real companion diagonal");
  return rad2deg(std::acos(clamp1(cb)));
}

namespace {

// Half apex angle of the isosceles triangle with sides arccos z, base gamma.
double arc_half_angle(double z, double gamma_deg) {
  double delta = std::acos(z);
  double cosA = clamp1((std::cos(deg2rad(gamma_deg)) - z * z) /
                       (std::sin(delta) * std::sin(delta)));
  return std::acos(cosA) / 2.0;
}

// The arc omega(psi, gamma) is nonempty iff kappa(psi) clears the half angle.
bool arc_nonempty(double z, double t0, double psi_deg, double gamma_deg) {
  if (psi_deg <= 1e-9) return false;
  double delta = std::acos(z);
  double psi = deg2rad(psi_deg);
  double kappa = (t0 - std::cos(psi) * z) / (std::sin(psi) * std::sin(delta));
  if (kappa > 1.0) return false;
  if (kappa < -1.0) return true;
  return std::acos(kappa) >= arc_half_angle(z, gamma_deg);
}

// Largest feasible psi in [lo, hi]; kappa is unimodal with its minimum at
// arccos(z / t0), so the feasible set meets [lo, hi] in one interval.
double arc_feasible_sup(double z, double t0, double gamma_deg, double lo,
                        double hi) {
  if (arc_nonempty(z, t0, hi, gamma_deg)) return hi;
  double probe = lo;
  if (!arc_nonempty(z, t0, lo, gamma_deg)) {
    double psi_min = rad2deg(std::acos(std::min(1.0, z / t0)));
    if (psi_min <= lo || psi_min >= hi ||
        !arc_nonempty(z, t0, psi_min, gamma_deg))
      return -1.0;
    probe = psi_min;
  }
  double a = probe, b = hi;  // feasible at a, infeasible at b
  for (int it = 0; it < 60; ++it) {
    double m = 0.5 * (a + b);
    (arc_nonempty(z, t0, m, gamma_deg) ? a : b) = m;
  }
  return a;
}

}  // namespace

FArcResult F_arc(const ExtensionPolynomial& ep, double psi_deg,
                 double gamma_deg, double t0_override) {
  const double z = ep.z;
  const double delta = std::acos(z);
  const double t0 = t0_override > -1.5 ? t0_override : ep.t0();
  FArcResult res;
  if (psi_deg <= 1e-9) return res;  // y = y1 violates the t0 constraints

  double half = arc_half_angle(z, gamma_deg);
  double psi = deg2rad(psi_deg);

  double kappa = (t0 - std::cos(psi) * z) / (std::sin(psi) * std::sin(delta));
  double u_max;
  if (kappa > 1.0) return res;  // empty arc
  if (kappa < -1.0) {
    u_max = kPi;
  } else {
    double cc = std::acos(kappa);
    if (cc < half) return res;
    u_max = std::min(kPi, cc - half);
  }

  double p0 = std::cos(psi) * z;
  double sp = std::sin(psi) * std::sin(delta);
  Polynomial a({-p0, -sp * std::cos(half)});
  double b = sp * std::sin(half);
  Polynomial q2({b * b, 0.0, -b * b});
  Polynomial obj = pair_objective(ep.f, a, q2);

  res.s0 = std::cos(u_max);
  MaxResult mx = max_on_interval(obj, res.s0, 1.0);
  res.value = mx.value;
  res.s_argmax = mx.argmax;
  {
    double sv = clamp1(mx.argmax);
    double root = std::sqrt(std::max(0.0, 1.0 - sv * sv));
    res.ti = p0 + sp * (std::cos(half) * sv + std::sin(half) * root);
    res.tj = p0 + sp * (std::cos(half) * sv - std::sin(half) * root);
  }
  res.feasible = true;
  return res;
}

namespace {

// Explicit coordinates of the rigid five-point family: apex y1 joined to the
// four-cycle y2 y3 y4 y5, all edges at arccos z, diagonal dist(y2,y4) = alpha.
struct Gamma5 {
  bool valid = false;
  std::array<std::array<double, 4>, 5> y{};
};

Gamma5 gamma5_coords(double alpha_deg, double z) {
  Gamma5 g;
  double ah = deg2rad(alpha_deg) / 2.0;
  double x1 = z / std::cos(ah);
  if (std::fabs(x1) >= 1.0) return g;
  double rho1 = std::sqrt(1.0 - x1 * x1);
  double u3 = (z - x1 * x1) / rho1;
  double w2 = 1.0 - x1 * x1 - u3 * u3;
  if (w2 < 0.0) return g;
  double w = std::sqrt(w2);
  g.y[0] = {x1, 0.0, rho1, 0.0};                       // y1 (apex)
  g.y[1] = {std::cos(ah), std::sin(ah), 0.0, 0.0};     // y2
  g.y[2] = {x1, 0.0, u3, w};                           // y3
  g.y[3] = {std::cos(ah), -std::sin(ah), 0.0, 0.0};    // y4
  g.y[4] = {x1, 0.0, u3, -w};                          // y5
  g.valid = true;
  return g;
}

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Range of psi = dist(y1, y) over {y : y . y_q >= t0 for all q}, by
// enumerating active subsets (the extrema of a linear functional on a sphere
// cut by caps sit where 1-3 constraints are active).
bool psi_range(const Gamma5& g, double t0, double* lo_deg, double* hi_deg) {
  std::vector<std::array<double, 4>> candidates;

  auto nullspace = [](const std::vector<std::array<double, 4>>& rows) {
    std::vector<std::array<double, 4>> basis;
    std::vector<std::array<double, 4>> ortho(rows);
    // Orthonormalize the row space.
    std::vector<std::array<double, 4>> rs;
    for (auto r : ortho) {
      for (const auto& p : rs) {
        double d = dot4(r, p);
        for (int k = 0; k < 4; ++k) r[k] -= d * p[k];
      }
      double nn = std::sqrt(dot4(r, r));
      if (nn > 1e-12) {
        for (auto& v : r) v /= nn;
        rs.push_back(r);
      }
    }
    for (int e = 0; e < 4; ++e) {
      std::array<double, 4> v{};
      v[e] = 1.0;
      for (const auto& p : rs) {
        double d = dot4(v, p);
        for (int k = 0; k < 4; ++k) v[k] -= d * p[k];
      }
      for (const auto& p : basis) {
        double d = dot4(v, p);
        for (int k = 0; k < 4; ++k) v[k] -= d * p[k];
      }
      double nn = std::sqrt(dot4(v, v));
      if (nn > 1e-9) {
        for (auto& x : v) x /= nn;
        basis.push_back(v);
      }
    }
    return std::make_pair(rs, basis);
  };

  auto solve_subset = [&](const std::vector<int>& subset) {
    std::vector<std::array<double, 4>> rows;
    for (int q : subset) rows.push_back(g.y[q]);
    auto [rs, ns] = nullspace(rows);
    if (rs.size() != rows.size()) return;  // degenerate subset
    // Minimum-norm particular solution p with y . y_q = t0: express in the
    // orthonormal row basis.
    std::array<double, 4> p{};
    {
      // Solve G c = t0 * 1 where G = rows * rs^T ... use small Gauss.
      int k = static_cast<int>(rows.size());
      std::vector<std::vector<double>> M(k, std::vector<double>(k + 1, 0.0));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) M[i][j] = dot4(rows[i], rs[j]);
        M[i][k] = t0;
      }
      for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
          if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (std::fabs(M[piv][col]) < 1e-12) return;
        std::swap(M[col], M[piv]);
        for (int r = 0; r < k; ++r) {
          if (r == col) continue;
          double fct = M[r][col] / M[col][col];
          for (int cc = col; cc <= k; ++cc) M[r][cc] -= fct * M[col][cc];
        }
      }
      for (int j = 0; j < k; ++j) {
        double coef = M[j][k] / M[j][j];
        for (int d = 0; d < 4; ++d) p[d] += coef * rs[j][d];
      }
    }
    double p2 = dot4(p, p);
    if (p2 > 1.0 + 1e-12) return;
    double r = std::sqrt(std::max(0.0, 1.0 - p2));
    if (ns.size() + rows.size() != 4) return;
    if (ns.empty()) return;

    // Extremize y . y1 over p + r * (unit vector in the null space).
    std::array<double, 4> dir{};
    for (const auto& nb : ns) {
      double d = dot4(g.y[0], nb);
      for (int k = 0; k < 4; ++k) dir[k] += d * nb[k];
    }
    double dn = std::sqrt(dot4(dir, dir));
    std::vector<std::array<double, 4>> dirs;
    if (dn > 1e-12) {
      std::array<double, 4> u{};
      for (int k = 0; k < 4; ++k) u[k] = dir[k] / dn;
      dirs.push_back(u);
      for (auto& v : u) v = -v;
      dirs.push_back(u);
    } else {
      dirs.push_back(ns[0]);
    }
    for (const auto& u : dirs) {
      std::array<double, 4> y{};
      for (int k = 0; k < 4; ++k) y[k] = p[k] + r * u[k];
      candidates.push_back(y);
    }
    // Vertices of the feasible arc (all-active subsets of size 3 give
    // isolated points; both sphere intersections matter).
    if (rows.size() == 3) {
      for (double sgn : {1.0, -1.0}) {
        std::array<double, 4> y{};
        for (int k = 0; k < 4; ++k) y[k] = p[k] + sgn * r * ns[0][k];
        candidates.push_back(y);
      }
    }
  };

  for (int a = 0; a < 5; ++a) {
    solve_subset({a});
    for (int b = a + 1; b < 5; ++b) {
      solve_subset({a, b});
      for (int c = b + 1; c < 5; ++c) solve_subset({a, b, c});
    }
  }

  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& y : candidates) {
    bool ok = true;
    for (int q = 0; q < 5 && ok; ++q)
      if (dot4(y, g.y[q]) < t0 - 1e-9) ok = false;
    if (!ok) continue;
    double psi = rad2deg(std::acos(clamp1(dot4(y, g.y[0]))));
    lo = std::min(lo, psi);
    hi = std::max(hi, psi);
  }
  if (lo > hi) return false;
  *lo_deg = lo;
  *hi_deg = hi;
  return true;
}

std::vector<double> lattice_grid(double lo, double hi, double step) {
  std::vector<double> g = {lo};
  double first = std::ceil(lo / step) * step;
  for (double x = first; x < hi - 1e-12; x += step)
    if (x > lo + 1e-12) g.push_back(x);
  g.push_back(hi);
  return g;
}

}  // namespace

namespace {

struct H5Cell {
  double a_lo, a_hi;  // alpha cell
  double p_lo, p_hi;  // psi cell
  double r;           // cell bound on f(-cos psi) + Phi_{2,4} + Phi_{3,5}
};

// psi feasibility range over an alpha cell, sampled and padded, clipped to
// the enclosing range when one is known.
bool h5_psi_range(double a_lo, double a_hi, double z, double t0,
                  double theta0_deg, double clip_lo, double clip_hi,
                  double* out_lo, double* out_hi) {
  double lo = HUGE_VAL, hi = -HUGE_VAL, prev_lo = 0, prev_hi = 0;
  double pad_lo = 0, pad_hi = 0;
  bool any = false, first = true;
  for (int s = 0; s <= 4; ++s) {
    double alpha = a_lo + (a_hi - a_lo) * s / 4.0;
    Gamma5 g = gamma5_coords(alpha, z);
    if (!g.valid) continue;
    double l, h;
    if (!psi_range(g, t0, &l, &h)) continue;
    if (!first) {
      pad_lo = std::max(pad_lo, std::fabs(l - prev_lo));
      pad_hi = std::max(pad_hi, std::fabs(h - prev_hi));
    }
    prev_lo = l;
    prev_hi = h;
    first = false;
    any = true;
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  }
  if (!any) return false;
  lo = std::max({0.1, lo - pad_lo - 0.01, clip_lo});
  hi = std::min({theta0_deg, hi + pad_hi + 0.01, clip_hi});
  if (lo >= hi) return false;
  *out_lo = lo;
  *out_hi = hi;
  return true;
}

}  // namespace

H5Result h5_bound_n4(const ExtensionPolynomial& ep, const H5Options& opt) {
  if (ep.n != 4) throw std::invalid_argument("h5_bound_n4: n must be 4");
  const double z = ep.z;
  const double delta_deg = rad2deg(std::acos(z));
  const double theta0 =
      opt.theta0_deg_override > 0.0 ? opt.theta0_deg_override : ep.theta0_deg();
  const double t0 = std::cos(deg2rad(theta0));

  double alpha0 = delta_deg;
  if (2.0 * theta0 < 120.0 - 1e-9) {
    double lam = lambda_angle_z(2.0 * theta0, z);
    alpha0 = std::max(alpha0, lam);
  }
  if (alpha0 > 90.0 + 1e-9)
    throw std::runtime_error("h5: empty alpha range (no five-point family)");
  alpha0 = std::min(alpha0, 90.0);

  // Cell bound: f(-cos psi) at the left end, the two F terms at the largest
  // pair-feasible psi (monotone increasing in psi on the feasible range).
  auto cell_bound = [&](double a_lo, double a_hi, double p_lo, double p_hi,
                        double* out) {
    double gamma2 = lambda_angle_z(a_hi, z);
    double sup1 = arc_feasible_sup(z, t0, a_lo, p_lo, p_hi);
    double sup2 = arc_feasible_sup(z, t0, gamma2, p_lo, p_hi);
    double p_eff = std::min(sup1, sup2);
    if (p_eff < p_lo) return false;
    FArcResult f1 = F_arc(ep, p_eff, a_lo, t0);
    FArcResult f2 = F_arc(ep, p_eff, gamma2, t0);
    if (!f1.feasible || !f2.feasible) return false;
    *out = ep.f(-std::cos(deg2rad(p_lo))) + f1.value + f2.value;
    return true;
  };

  auto cmp = [](const H5Cell& x, const H5Cell& y) { return x.r < y.r; };
  std::priority_queue<H5Cell, std::vector<H5Cell>, decltype(cmp)> heap(cmp);

  std::vector<double> alphas = lattice_grid(alpha0, 90.0, opt.alpha_step_deg);
  for (size_t i = 0; i + 1 < alphas.size(); ++i) {
    double lo, hi;
    if (!h5_psi_range(alphas[i], alphas[i + 1], z, t0, theta0, 0.0, HUGE_VAL,
                      &lo, &hi))
      continue;
    std::vector<double> psis = lattice_grid(lo, hi, opt.psi_step_deg);
    for (size_t j = 0; j + 1 < psis.size(); ++j) {
      double r;
      if (cell_bound(alphas[i], alphas[i + 1], psis[j], psis[j + 1], &r))
        heap.push({alphas[i], alphas[i + 1], psis[j], psis[j + 1], r});
    }
  }

  H5Result res;
  res.value = -HUGE_VAL;
  while (!heap.empty()) {
    H5Cell c = heap.top();
    heap.pop();
    double aw = c.a_hi - c.a_lo, pw = c.p_hi - c.p_lo;
    if (!opt.refine ||
        (aw <= opt.alpha_floor_deg + 1e-12 && pw <= opt.psi_floor_deg + 1e-12)) {
      res.value = c.r;
      res.alpha_argmax_deg = c.a_lo;
      res.psi_argmax_deg = c.p_lo;
      double gamma2 = lambda_angle_z(c.a_hi, z);
      FArcResult f1 = F_arc(ep, c.p_hi, c.a_lo, t0);
      FArcResult f2 = F_arc(ep, c.p_hi, gamma2, t0);
      if (f1.feasible && f2.feasible)
        res.witness_theta_deg = {c.p_lo,
                                 rad2deg(std::acos(clamp1(f1.ti))),
                                 rad2deg(std::acos(clamp1(f1.tj))),
                                 rad2deg(std::acos(clamp1(f2.ti))),
                                 rad2deg(std::acos(clamp1(f2.tj)))};
      break;
    }
    if (aw / opt.alpha_floor_deg >= pw / opt.psi_floor_deg) {
      double mid = 0.5 * (c.a_lo + c.a_hi);
      for (int half = 0; half < 2; ++half) {
        double a_lo = half == 0 ? c.a_lo : mid;
        double a_hi = half == 0 ? mid : c.a_hi;
        double lo, hi;
        if (!h5_psi_range(a_lo, a_hi, z, t0, theta0, c.p_lo, c.p_hi, &lo, &hi))
          continue;
        double r;
        if (cell_bound(a_lo, a_hi, lo, hi, &r))
          heap.push({a_lo, a_hi, lo, hi, std::min(r, c.r)});
      }
    } else {
      double mid = 0.5 * (c.p_lo + c.p_hi);
      double r;
      if (cell_bound(c.a_lo, c.a_hi, c.p_lo, mid, &r))
        heap.push({c.a_lo, c.a_hi, c.p_lo, mid, std::min(r, c.r)});
      if (cell_bound(c.a_lo, c.a_hi, mid, c.p_hi, &r))
        heap.push({c.a_lo, c.a_hi, mid, c.p_hi, std::min(r, c.r)});
    }
  }
  if (res.value == -HUGE_VAL)
    throw std::runtime_error("h5: no feasible cell found");
  res.value += ep.f(1.0);
  return res;
}

double h6_bound_n4(const ExtensionPolynomial& ep, const H5Options& opt) {
  if (ep.n != 4) throw std::invalid_argument("h6_bound_n4: n must be 4");
  const double theta0 = ep.theta0_deg();
  const double theta_floor = rad2deg(std::acos(std::sqrt(ep.z)));
  if (theta_floor > theta0 + 1e-9)
    throw std::runtime_error("h6: six points cannot fit (theta floor above theta0)");
  const double split = 50.0;

  if (theta0 <= split) {
    H5Result h5 = h5_bound_n4(ep, opt);
    return h5.value + ep.f(-std::cos(deg2rad(theta_floor)));
  }
  H5Result case1 = h5_bound_n4(ep, opt);
  double v1 = case1.value + ep.f(-std::cos(deg2rad(split)));

  H5Options opt2 = opt;
  opt2.theta0_deg_override = split;
  H5Result case2 = h5_bound_n4(ep, opt2);
  double v2 = case2.value + ep.f(-std::cos(deg2rad(theta_floor)));
  return std::max(v1, v2);
}

// ---------------------------------------------------------------------------
// h_report
// ---------------------------------------------------------------------------

HReport h_report(const ExtensionPolynomial& ep, const AngleCapacityTable& table,
                 const HReportOptions& options) {
  HReport rep;
  auto [h0, h1] = h01(ep);

  if (ep.delsarte_mode) {
    rep.mu = 0;
    rep.h.push_back({0, h0, "value-at-1", false, {}});
  } else {
    CodeProblem prob{ep.n, ep.z};
    rep.mu = mu_upper_bound(prob, ep.t0(), table);
    const double theta0 = ep.theta0_deg();
    const double delta_deg = prob.delta_deg();

    // Geometric feasibility caps sharpen the table bound.
    int mu_eff = rep.mu;
    if (delta_deg > 2.0 * theta0) mu_eff = std::min(mu_eff, 1);
    if (ep.n == 3) {
      double r0 = rad2deg(std::acos(std::sqrt((1 + 2 * ep.z) / 3.0)));
      if (r0 > theta0) mu_eff = std::min(mu_eff, 2);
      if (2.0 * theta0 < 90.0) mu_eff = std::min(mu_eff, 3);
      if (mu_eff > 4)
        throw std::runtime_error("unsupported mu for n=3: " + std::to_string(mu_eff));
    } else if (ep.n == 4) {
      if (mu_eff > 6)
        throw std::runtime_error("unsupported mu for n=4: " + std::to_string(mu_eff));
    } else {
      throw std::runtime_error("unsupported dimension for h_report");
    }

    rep.h.push_back({0, h0, "value-at-1", false, {}});
    if (mu_eff >= 1) rep.h.push_back({1, h1, "antipode", false, {0.0}});
    if (mu_eff >= 2) {
      F1Result f1 = F1(ep, delta_deg);
      rep.h.push_back({2, ep.f(1.0) + f1.value, "pair-arc", false,
                       {f1.theta_deg, delta_deg - f1.theta_deg}});
    }
    if (mu_eff >= 3) {
      if (ep.n == 3) {
        H3GridResult r;
        if (options.h3_cells > 0) {
          double r0 = h3_default_grid_deg(ep).front();
          std::vector<double> grid;
          for (int i = 0; i <= options.h3_cells; ++i)
            grid.push_back(r0 + (theta0 - r0) * i / options.h3_cells);
          r = h3_triangle_n3(ep, grid);
        } else {
          r = h3_triangle_n3(ep);
        }
        rep.h.push_back({3, r.value, "triangle-grid", true, r.witness_theta_deg});
      } else {
        try {
          PowersumResult r = h_simplex_powersum(ep, 3);
          rep.h.push_back({3, r.value, "power-sum", false, r.witness_theta_deg});
        } catch (const std::runtime_error&) {
          std::vector<double> w;
          double v = h_simplex_triangulation(ep, 3, options.triangulation_eps_deg, &w);
          rep.h.push_back({3, v, "triangulation", true, w});
        }
      }
    }
    if (mu_eff >= 4) {
      if (ep.n == 3) {
        H4RhombResult r;
        if (options.h4_exact) {
          r = h4_rhomb_bnb(ep);
          rep.h.push_back({4, r.value, "rhomb-bnb", true, r.witness_theta_deg});
        } else {
          if (options.h4_cells > 0) {
            double lo = std::max(rho_diagonal(2.0 * theta0, ep.z),
                                 rad2deg(std::acos(ep.z)));
            std::vector<double> grid;
            for (int i = 0; i <= options.h4_cells; ++i)
              grid.push_back(lo + (90.0 - lo) * i / options.h4_cells);
            r = h4_rhomb_n3(ep, grid);
          } else {
            r = h4_rhomb_n3(ep);
          }
          rep.h.push_back({4, r.value, "rhomb-grid", true, r.witness_theta_deg});
        }
      } else {
        try {
          PowersumResult r = h_simplex_powersum(ep, 4);
          rep.h.push_back({4, r.value, "power-sum", false, r.witness_theta_deg});
        } catch (const std::runtime_error&) {
          std::vector<double> w;
          double v = h_simplex_triangulation(ep, 4, options.triangulation_eps_deg, &w);
          rep.h.push_back({4, v, "triangulation", true, w});
        }
      }
    }
    if (mu_eff >= 5) {
      try {
        H5Result r = h5_bound_n4(ep, options.h5);
        rep.h.push_back({5, r.value, "five-point-grid", true,
                         r.witness_theta_deg});
      } catch (const std::runtime_error&) {
        mu_eff = 4;  // no feasible five-point family inside the cap
      }
    }
    if (mu_eff >= 6) {
      try {
        double v = h6_bound_n4(ep, options.h5);
        rep.h.push_back({6, v, "six-point-split", true, {}});
      } catch (const std::runtime_error&) {
      }
    }
  }

  rep.h_max = -HUGE_VAL;
  for (const auto& e : rep.h)
    if (e.value > rep.h_max) {
      rep.h_max = e.value;
      rep.argmax_m = e.m;
    }
  rep.bound = rep.h_max / ep.c0();
  double next_int = std::floor(rep.h_max) + 1.0;
  rep.integer_slack = next_int - rep.h_max;
  rep.slack_ok = rep.integer_slack >= 1e-4;
  return rep;
}

}  // namespace kissing
