#ifndef KISSING_POLYSEARCH_HPP
#define KISSING_POLYSEARCH_HPP

#include <string>
#include <vector>

#include "kissing/extension.hpp"
#include "kissing/lp.hpp"
#include "kissing/orthopoly.hpp"

namespace kissing {

// Inputs of the discretized search; t0 = 1 selects the classic mode with no
// monotonicity segment and objective f(1).
struct SearchConfig {
  int n = 4;
  double z = 0.5;
  double t0 = 0.6058;
  int d = 9;      // highest Gegenbauer degree
  int N = 2000;   // grid resolution
  // Optional strictness margin, in units of the grid step: the monotone rows
  // get f(a_j) - f(a_j+1) >= margin * eps and the nonpositivity rows
  // f(a_j) <= -margin * eps.  Zero keeps the plain discretization; a positive
  // value keeps f clear of zero between grid points so the continuous
  // certificates become attainable.
  double strict_margin = 0.0;
  // Subdivision factor for the monotone rows: C2 constraints are imposed on
  // a grid r times finer than the main one, which shrinks the between-node
  // wobble of f' that the continuous certificate has to absorb.
  int c2_refine = 1;
  // Additional configuration rows f(1) + sum_i f(-cos theta_i) <= E, given as
  // theta lists in degrees.  Used to feed h-chain argmax configurations back
  // into the search; the output is re-certified regardless.
  std::vector<std::vector<double>> extra_configs;

  std::string to_json() const;
  static SearchConfig from_json(const std::string& text);
};

struct SearchResult {
  GegenbauerExpansion expansion;  // c_0 = 1 fixed
  Polynomial f;
  ExactPoly f_exact;  // exact assembly of the clamped expansion
  double F0 = 0.0;
  double E = 0.0;  // F0 + f(1)
  // Post-hoc continuous certification of the monotone segment and the
  // nonpositivity segment (grid constraints are only a discretization).
  bool certified = false;         // both continuous checks passed
  CertResult sign_cert;
  CertResult monotone_cert;
  double t0_realized = 0.0;       // leftmost root of f, when present
  double lp_residual = 0.0;       // independent feasibility audit of the LP

  std::string to_json() const;
};

// b_m = -cos R_m for m in I_n = {1..n} union {2n-2}.
double simplex_center_products(int n, double z, int m);

LinearProgram build_lp(const SearchConfig& cfg);

// Solves the LP, assembles f = 1 + sum c_k G_k, re-certifies the continuous
// constraints.  Throws std::runtime_error on infeasibility.
SearchResult search(const SearchConfig& cfg);

}  // namespace kissing

#endif  // KISSING_POLYSEARCH_HPP
