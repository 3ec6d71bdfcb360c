#ifndef KISSING_HBOUND_HPP
#define KISSING_HBOUND_HPP

#include <string>
#include <vector>

#include "kissing/extension.hpp"
#include "kissing/orthopoly.hpp"
#include "kissing/polynomial.hpp"
#include "kissing/spherical.hpp"

namespace kissing {

// P(s) = f(a(s) + sqrt(q2(s))) + f(a(s) - sqrt(q2(s))): the odd powers of the
// square root cancel, so the pair objective is an honest polynomial.
Polynomial pair_objective(const Polynomial& f, const Polynomial& a,
                          const Polynomial& q2);

struct F1Result {
  double value = 0.0;
  double theta_deg = 0.0;  // argmax angle; ties resolved toward smaller theta
};

// F1(psi) = max over theta in [psi/2, theta0] of
// f(-cos theta) + f(-cos(psi - theta)), psi in [delta, 2 theta0].
F1Result F1(const ExtensionPolynomial& ep, double psi_deg);

// h_0 = f(1), h_1 = f(1) + f(-1).
std::pair<double, double> h01(const ExtensionPolynomial& ep);

// h_2 = f(1) + F1(delta).
double h2(const ExtensionPolynomial& ep);

// Regular-triangle bound for m = 3 on S^2: partition the theta_3 range into
// the given cells, bound each by F2(right end) + f(-cos(left end)).
struct H3GridResult {
  double value = 0.0;
  std::vector<double> cell_values;
  std::vector<double> grid_deg;
  std::vector<double> witness_theta_deg;  // near-argmax configuration
};
std::vector<double> h3_default_grid_deg(const ExtensionPolynomial& ep);
H3GridResult h3_triangle_n3(const ExtensionPolynomial& ep);
H3GridResult h3_triangle_n3(const ExtensionPolynomial& ep,
                            const std::vector<double>& psi_grid_deg);

// Diagonal relation of the spherical rhomb with side arccos z:
// rho(s) = 2 arccos(z / cos(s/2)).
double rho_diagonal(double s_deg, double z);

// Rhomb bound for m = 4 on S^2 over a grid of the short diagonal.
struct H4RhombResult {
  double value = 0.0;
  std::vector<double> case_values;
  std::vector<double> witness_theta_deg;
};
H4RhombResult h4_rhomb_n3(const ExtensionPolynomial& ep);
H4RhombResult h4_rhomb_n3(const ExtensionPolynomial& ep,
                          const std::vector<double>& d1_grid_deg);

// Convergent alternative to the diagonal-split envelope: branch-and-bound
// over (short diagonal, position of the antipodal center) with
// triangle-inequality padding.  Tight where the F1 x F1 decoupling is not.
H4RhombResult h4_rhomb_bnb(const ExtensionPolynomial& ep,
                           double floor_deg = 0.05);

// Simplex-slice bound for 2 <= m <= n: branch-and-bound over angle-space
// boxes covering the constraint body; per-cell corner bounds are tightened
// by a Lagrangian chord bound so the result converges quadratically in eps.
double h_simplex_triangulation(const ExtensionPolynomial& ep, int m,
                               double eps_deg,
                               std::vector<double>* witness_theta_deg = nullptr);

// Power-sum method for m in {3, 4}; requires n = 4 and the degree-9
// structure f_9 > 0, f_6 = f_8 = 0 (plus f_7 > -15 f_9 / 7 when m = 3).
// Throws std::runtime_error("lemma hypotheses violated...") otherwise.
struct PowersumResult {
  double value = 0.0;
  std::vector<double> witness_theta_deg;
};
PowersumResult h_simplex_powersum(const ExtensionPolynomial& ep, int m);

// beta = lambda(alpha) with 2 cos a cos b + cos a + cos b = 0 (z = 1/2).
double lambda_angle(double alpha_deg);
// General-z Gram relation: (1 + cos b - 2z^2)(1 + cos a - 2z^2) = 4z^2(1-z)^2.
double lambda_angle_z(double alpha_deg, double z);

// Maximum of f(-y.y_i) + f(-y.y_j) over the arc at distance psi from y_1 in
// the triangle with sides arccos z and base gamma, subject to y.y_l >= t0.
struct FArcResult {
  double value = 0.0;
  bool feasible = false;
  double s_argmax = 0.0;
  double s0 = 0.0;   // arc endpoint in s = cos u
  double ti = 0.0;   // inner products y.y_i, y.y_j at the argmax
  double tj = 0.0;
};
FArcResult F_arc(const ExtensionPolynomial& ep, double psi_deg,
                 double gamma_deg, double t0_override = -2.0);

struct H5Options {
  double alpha_step_deg = 1.0;
  double psi_step_deg = 0.5;
  double theta0_deg_override = 0.0;  // 0 = use the certified theta0
  // Adaptive refinement of the cell matrix: the top cell is split until its
  // widths reach the floors, which pins the bound near the grid limit.
  bool refine = true;
  double alpha_floor_deg = 0.02;
  double psi_floor_deg = 0.002;
};

struct H5Result {
  double value = 0.0;
  double alpha_argmax_deg = 0.0;
  double psi_argmax_deg = 0.0;
  std::vector<double> witness_theta_deg;
};

// Five-point bound on S^3 via the rigid one-parameter family of the
// edge graph with one degree-4 vertex.
H5Result h5_bound_n4(const ExtensionPolynomial& ep, const H5Options& opt = {});

// Six-point bound: the split into theta_6 above/below 50 degrees, with the
// floor theta_6 >= arccos(sqrt z) from the circle-capacity argument.
double h6_bound_n4(const ExtensionPolynomial& ep, const H5Options& opt = {});

struct HEntry {
  int m = 0;
  double value = 0.0;
  std::string method;
  bool over_estimate = false;  // grid bound vs exact-to-tolerance
  std::vector<double> witness_theta_deg;
};

struct HReport {
  int mu = 0;
  std::vector<HEntry> h;
  double h_max = 0.0;
  int argmax_m = 0;
  double bound = 0.0;          // h_max / c_0
  double integer_slack = 0.0;  // next integer above h_max, minus h_max
  bool slack_ok = false;       // integer_slack >= 1e-4
};

struct HReportOptions {
  double triangulation_eps_deg = 0.05;
  H5Options h5;
  // Uniform cell counts for the n = 3 grid methods; 0 keeps the defaults.
  int h3_cells = 0;
  int h4_cells = 0;
  // Use the convergent rhomb branch-and-bound instead of the diagonal-split
  // envelope for h4 (n = 3).
  bool h4_exact = false;
};

// Computes mu and every h_m by the method appropriate to the dimension.
// Throws std::runtime_error("unsupported mu ...") beyond the implemented
// range (mu > 4 for n = 3, mu > 6 for n = 4).
HReport h_report(const ExtensionPolynomial& ep, const AngleCapacityTable& table,
                 const HReportOptions& options = {});

}  // namespace kissing

#endif  // KISSING_HBOUND_HPP
