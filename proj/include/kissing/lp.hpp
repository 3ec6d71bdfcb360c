#ifndef KISSING_LP_HPP
#define KISSING_LP_HPP

#include <optional>
#include <vector>

namespace kissing {

enum class Relation { kLe, kGe, kEq };

struct LpRow {
  std::vector<double> a;
  Relation rel = Relation::kLe;
  double rhs = 0.0;
};

// min objective . x  subject to rows and per-variable bounds.
// Default lower bound is 0; a lower bound of -infinity makes the variable
// free.  Upper bounds are optional.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;                  // resized to objective size
  std::vector<std::optional<double>> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  void add_row(std::vector<double> a, Relation rel, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  int pivots = 0;
  // Dual certificate in the internal canonical form (min c.x, Ax <= b,
  // x >= 0): y <= 0 with A^T y <= c; bound = b.y + shift.  Used by the
  // weak-duality audit.
  std::vector<double> canonical_dual;
  std::vector<double> canonical_b;
  std::vector<std::vector<double>> canonical_a;
  std::vector<double> canonical_c;
  double canonical_shift = 0.0;
};

// Primal simplex on the condensed tableau; Dantzig pricing with a permanent
// switch to Bland's rule once pivots stall, which guarantees termination.
LpSolution solve(const LinearProgram& lp);

// Independent audit: largest violation of rows and bounds at x.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

// Weak-duality audit of an optimal solution; returns the certified dual
// bound (objective_value must be >= it up to tol) or nullopt when the dual
// certificate fails feasibility.
std::optional<double> dual_bound(const LpSolution& sol, double tol = 1e-7);

}  // namespace kissing

#endif  // KISSING_LP_HPP
