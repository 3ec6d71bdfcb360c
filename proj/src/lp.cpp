#include "kissing/lp.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace kissing {

namespace {

constexpr double kCostEps = 1e-9;
constexpr double kPivotEps = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Canonical form: min c.x, A x <= b, x >= 0.
struct Canonical {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  double shift = 0.0;  // objective constant from bound substitutions
  std::vector<int> plus_col;
  std::vector<int> minus_col;  // -1 if none
  std::vector<double> lower_shift;
};

Canonical canonicalize(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  Canonical cf;
  cf.plus_col.assign(nv, -1);
  cf.minus_col.assign(nv, -1);
  cf.lower_shift.assign(nv, 0.0);

  std::vector<double> lower = lp.lower;
  lower.resize(nv, 0.0);
  std::vector<std::optional<double>> upper = lp.upper;
  upper.resize(nv);

  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    cf.plus_col[j] = ncols++;
    if (std::isinf(lower[j]) && lower[j] < 0) {
      cf.minus_col[j] = ncols++;
    } else {
      cf.lower_shift[j] = lower[j];
    }
  }
  cf.c.assign(ncols, 0.0);
  for (int j = 0; j < nv; ++j) {
    cf.c[cf.plus_col[j]] = lp.objective[j];
    if (cf.minus_col[j] >= 0) cf.c[cf.minus_col[j]] = -lp.objective[j];
    cf.shift += lp.objective[j] * cf.lower_shift[j];
  }

  auto add_le = [&](const std::vector<double>& coef, double rhs) {
    std::vector<double> row(ncols, 0.0);
    double adj = rhs;
    for (int j = 0; j < nv; ++j) {
      row[cf.plus_col[j]] = coef[j];
      if (cf.minus_col[j] >= 0) row[cf.minus_col[j]] = -coef[j];
      adj -= coef[j] * cf.lower_shift[j];
    }
    cf.a.push_back(std::move(row));
    cf.b.push_back(adj);
  };

  for (const auto& r : lp.rows) {
    if (static_cast<int>(r.a.size()) != nv)
      throw std::invalid_argument("LP row arity mismatch");
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("non-finite rhs");
    if (r.rel == Relation::kLe || r.rel == Relation::kEq) add_le(r.a, r.rhs);
    if (r.rel == Relation::kGe || r.rel == Relation::kEq) {
      std::vector<double> neg(r.a);
      for (auto& v : neg) v = -v;
      add_le(neg, -r.rhs);
    }
  }
  for (int j = 0; j < nv; ++j) {
    if (upper[j]) {
      std::vector<double> coef(nv, 0.0);
      coef[j] = 1.0;
      add_le(coef, *upper[j]);
    }
  }
  return cf;
}

// Small dense LU with partial pivoting.
struct SmallLU {
  int k = 0;
  std::vector<std::vector<double>> lu;
  std::vector<int> perm;
  bool ok = false;

  bool factor(std::vector<std::vector<double>> m) {
    k = static_cast<int>(m.size());
    lu = std::move(m);
    perm.resize(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    for (int col = 0; col < k; ++col) {
      int piv = col;
      for (int r = col + 1; r < k; ++r)
        if (std::fabs(lu[r][col]) > std::fabs(lu[piv][col])) piv = r;
      if (std::fabs(lu[piv][col]) < 1e-12) return ok = false;
      std::swap(lu[col], lu[piv]);
      std::swap(perm[col], perm[piv]);
      for (int r = col + 1; r < k; ++r) {
        double f = lu[r][col] / lu[col][col];
        lu[r][col] = f;
        for (int cc = col + 1; cc < k; ++cc) lu[r][cc] -= f * lu[col][cc];
      }
    }
    return ok = true;
  }

  // Solves M x = rhs (rhs indexed like the original row order).
  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> x(k);
    for (int i = 0; i < k; ++i) x[i] = rhs[perm[i]];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu[i][j] * x[j];
    for (int i = k - 1; i >= 0; --i) {
      for (int j = i + 1; j < k; ++j) x[i] -= lu[i][j] * x[j];
      x[i] /= lu[i][i];
    }
    return x;
  }
};

// Condensed-tableau simplex state.
struct Tableau {
  int m = 0;                           // constraint rows
  int ncols = 0;                       // nonbasic columns (excluding rhs)
  int nstruct = 0;                     // structural variables (incl. aux)
  std::vector<std::vector<double>> t;  // (m+1) x (ncols+1); row m = cost row
  std::vector<int> row_id;             // basic variable per row
  std::vector<int> col_id;             // nonbasic variable per column
  int pivots = 0;
  int stalls = 0;
  int since_rebuild = 0;
  bool bland = false;

  // Original data access: structural column entry and cost per variable id.
  std::function<double(int row, int var)> a_of;
  std::function<double(int var)> cost_of;

  bool is_slack(int id) const { return id >= nstruct && id < nstruct + m; }

  void pivot(int r, int c) {
    double p = t[r][c];
    const int w = ncols + 1;
    std::vector<double>& pr = t[r];
    for (int j = 0; j < w; ++j)
      if (j != c) pr[j] /= p;
    pr[c] = 1.0 / p;
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      double f = t[i][c];
      if (f == 0.0) continue;
      std::vector<double>& ri = t[i];
      for (int j = 0; j < w; ++j)
        if (j != c) ri[j] -= f * pr[j];
      ri[c] = -f / p;
    }
    std::swap(row_id[r], col_id[c]);
    ++pivots;
    ++since_rebuild;
  }

  // Recomputes every tableau entry from the original data for the current
  // basis; the structural-basic system is tiny, so this is cheap and clears
  // accumulated pivot drift.
  bool rebuild() {
    since_rebuild = 0;
    std::vector<int> srow, sid;  // rows holding structural basics
    for (int i = 0; i < m; ++i)
      if (!is_slack(row_id[i])) {
        srow.push_back(i);
        sid.push_back(row_id[i]);
      }
    std::vector<int> active;  // rows whose slack is nonbasic
    for (int c = 0; c < ncols; ++c)
      if (is_slack(col_id[c])) active.push_back(col_id[c] - nstruct);
    if (active.size() != sid.size()) return false;
    const int k = static_cast<int>(sid.size());

    SmallLU lu;
    {
      std::vector<std::vector<double>> mm(k, std::vector<double>(k));
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) mm[r][s] = a_of(active[r], sid[s]);
      if (k > 0 && !lu.factor(std::move(mm))) return false;
    }
    auto solve_dir = [&](const std::vector<double>& rhs) {
      return k > 0 ? lu.solve(rhs) : std::vector<double>();
    };

    // Per-column direction of the structural basics, then fill rows.
    // direct_var >= 0 adds the direct contribution of a structural nonbasic
    // to the slack rows; slack columns (direct_var < 0) only act through the
    // structural basics.
    auto fill_column = [&](int cidx, const std::vector<double>& xdir,
                           int direct_var) {
      for (int i = 0; i < m; ++i) {
        int id = row_id[i];
        double v;
        if (!is_slack(id)) {
          int s = 0;
          while (sid[s] != id) ++s;
          v = xdir[s];
        } else {
          int row = id - nstruct;
          double acc = direct_var >= 0 ? a_of(row, direct_var) : 0.0;
          for (int s = 0; s < k; ++s)
            if (xdir[s] != 0.0) acc -= a_of(row, sid[s]) * xdir[s];
          v = acc;
        }
        t[i][cidx] = v;
      }
      double red = direct_var >= 0 ? cost_of(direct_var) : 0.0;
      for (int s = 0; s < k; ++s) red -= cost_of(sid[s]) * xdir[s];
      t[m][cidx] = red;
    };

    for (int c = 0; c < ncols; ++c) {
      int v = col_id[c];
      std::vector<double> rhs(k);
      if (!is_slack(v)) {
        for (int r = 0; r < k; ++r) rhs[r] = a_of(active[r], v);
        fill_column(c, solve_dir(rhs), v);
      } else {
        int q = v - nstruct;
        for (int r = 0; r < k; ++r) rhs[r] = active[r] == q ? 1.0 : 0.0;
        fill_column(c, solve_dir(rhs), -1);
      }
    }
    // rhs column: basic values.
    {
      std::vector<double> rhs(k);
      for (int r = 0; r < k; ++r) rhs[r] = b_of(active[r]);
      std::vector<double> xb = solve_dir(rhs);
      double obj = 0.0;
      for (int s = 0; s < k; ++s) obj += cost_of(sid[s]) * xb[s];
      for (int i = 0; i < m; ++i) {
        int id = row_id[i];
        if (!is_slack(id)) {
          int s = 0;
          while (sid[s] != id) ++s;
          t[i][ncols] = xb[s];
        } else {
          int row = id - nstruct;
          double acc = b_of(row);
          for (int s = 0; s < k; ++s) acc -= a_of(row, sid[s]) * xb[s];
          t[i][ncols] = acc;
        }
      }
      t[m][ncols] = -obj;
    }
    return true;
  }

  std::function<double(int row)> b_of;

  int choose_entering() const {
    if (!bland) {
      int best = -1;
      double bestv = -kCostEps;
      for (int j = 0; j < ncols; ++j)
        if (t[m][j] < bestv) {
          bestv = t[m][j];
          best = j;
        }
      return best;
    }
    int best = -1;
    for (int j = 0; j < ncols; ++j)
      if (t[m][j] < -kCostEps && (best < 0 || col_id[j] < col_id[best])) best = j;
    return best;
  }

  int choose_leaving(int c) const {
    int best = -1;
    double best_ratio = kInf;
    for (int i = 0; i < m; ++i) {
      double aij = t[i][c];
      if (aij <= kPivotEps) continue;
      double ratio = std::max(0.0, t[i][ncols]) / aij;
      bool better;
      if (ratio < best_ratio - 1e-10) {
        better = true;
      } else if (ratio > best_ratio + 1e-10) {
        better = false;
      } else if (bland) {
        better = best < 0 || row_id[i] < row_id[best];
      } else {
        better = best < 0 || std::fabs(aij) > std::fabs(t[best][c]);
      }
      if (better) {
        best_ratio = std::min(best_ratio, ratio);
        best = i;
      }
    }
    return best;
  }

  // Simplex to verified optimality; false means verified unbounded.
  bool optimize(int max_pivots) {
    while (true) {
      if (since_rebuild >= 64) rebuild();
      int c = choose_entering();
      if (c < 0) {
        if (since_rebuild == 0) return true;
        rebuild();
        c = choose_entering();
        if (c < 0) return true;
      }
      int r = choose_leaving(c);
      if (r < 0) {
        if (since_rebuild != 0) {
          rebuild();
          c = choose_entering();
          if (c < 0) return true;
          r = choose_leaving(c);
        }
        if (r < 0) return false;
      }
      if (t[r][ncols] <= 1e-12) {
        if (++stalls > 40) bland = true;
      } else {
        stalls = 0;
      }
      pivot(r, c);
      if (pivots > max_pivots)
        throw std::runtime_error("simplex pivot limit exceeded");
    }
  }

  void drop_column(int c) {
    for (int i = 0; i <= m; ++i) {
      t[i][c] = t[i][ncols - 1];
      t[i][ncols - 1] = t[i][ncols];
      t[i].pop_back();
    }
    col_id[c] = col_id[ncols - 1];
    col_id.pop_back();
    --ncols;
  }
};

}  // namespace

void LinearProgram::add_row(std::vector<double> a, Relation rel, double rhs) {
  rows.push_back({std::move(a), rel, rhs});
}

LpSolution solve(const LinearProgram& lp) {
  Canonical cf = canonicalize(lp);
  const int m = static_cast<int>(cf.a.size());
  const int n = static_cast<int>(cf.c.size());
  const int aux_id = n;  // structural ids: 0..n-1 real, n = phase-1 auxiliary

  Tableau tb;
  tb.m = m;
  tb.ncols = n;
  tb.nstruct = n + 1;  // reserve the aux id slot; slacks follow
  tb.t.assign(m + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tb.t[i][j] = cf.a[i][j];
    tb.t[i][n] = cf.b[i];
  }
  tb.row_id.resize(m);
  tb.col_id.resize(n);
  for (int i = 0; i < m; ++i) tb.row_id[i] = tb.nstruct + i;
  for (int j = 0; j < n; ++j) tb.col_id[j] = j;
  tb.a_of = [&cf, aux_id](int row, int var) {
    return var == aux_id ? -1.0 : cf.a[row][var];
  };
  tb.b_of = [&cf](int row) { return cf.b[row]; };

  const int max_pivots = 400000 + 40 * (m + n);
  LpSolution sol;

  bool phase1_needed = false;
  {
    double min_b = 0.0;
    int worst = -1;
    for (int i = 0; i < m; ++i)
      if (tb.t[i][n] < min_b) {
        min_b = tb.t[i][n];
        worst = i;
      }
    if (worst >= 0) {
      phase1_needed = true;
      for (int i = 0; i <= m; ++i) {
        tb.t[i].push_back(tb.t[i][n]);
        tb.t[i][n] = (i < m) ? -1.0 : 0.0;
      }
      tb.col_id.push_back(aux_id);
      ++tb.ncols;
      tb.cost_of = [aux_id](int var) { return var == aux_id ? 1.0 : 0.0; };
      for (int j = 0; j < tb.ncols; ++j)
        tb.t[m][j] = (tb.col_id[j] == aux_id) ? 1.0 : 0.0;
      tb.t[m][tb.ncols] = 0.0;
      tb.pivot(worst, n);  // aux column sits at index n
      if (!tb.optimize(max_pivots))
        throw std::runtime_error("phase-1 subproblem unbounded");
      if (tb.t[m][tb.ncols] < -1e-7) {
        sol.status = LpStatus::kInfeasible;
        sol.pivots = tb.pivots;
        return sol;
      }
      int aux_where = -1;
      for (int j = 0; j < tb.ncols; ++j)
        if (tb.col_id[j] == aux_id) aux_where = j;
      if (aux_where < 0) {
        int aux_row = -1;
        for (int i = 0; i < m; ++i)
          if (tb.row_id[i] == aux_id) aux_row = i;
        if (aux_row < 0) throw std::logic_error("auxiliary variable lost");
        int c = -1;
        for (int j = 0; j < tb.ncols; ++j)
          if (std::fabs(tb.t[aux_row][j]) > 1e-7 && !tb.is_slack(tb.col_id[j])) {
            c = j;
            break;
          }
        if (c < 0)
          for (int j = 0; j < tb.ncols; ++j)
            if (std::fabs(tb.t[aux_row][j]) > 1e-7) {
              c = j;
              break;
            }
        if (c < 0) throw std::runtime_error("degenerate auxiliary row");
        tb.pivot(aux_row, c);
        for (int j = 0; j < tb.ncols; ++j)
          if (tb.col_id[j] == aux_id) aux_where = j;
      }
      tb.drop_column(aux_where);
    }
  }

  tb.cost_of = [&cf, n](int var) { return var < n ? cf.c[var] : 0.0; };
  tb.bland = false;
  tb.stalls = 0;
  if (phase1_needed) {
    if (!tb.rebuild()) throw std::runtime_error("basis refactorization failed");
  } else {
    for (int j = 0; j < tb.ncols; ++j) tb.t[m][j] = tb.cost_of(tb.col_id[j]);
    tb.t[m][tb.ncols] = 0.0;
  }

  if (!tb.optimize(max_pivots)) {
    sol.status = LpStatus::kUnbounded;
    sol.pivots = tb.pivots;
    return sol;
  }
  tb.rebuild();

  std::vector<double> xc(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (tb.row_id[i] < n) xc[tb.row_id[i]] = std::max(0.0, tb.t[i][tb.ncols]);

  sol.status = LpStatus::kOptimal;
  sol.pivots = tb.pivots;
  const int nv = lp.num_vars();
  sol.x.assign(nv, 0.0);
  for (int j = 0; j < nv; ++j) {
    double v = xc[cf.plus_col[j]];
    if (cf.minus_col[j] >= 0) v -= xc[cf.minus_col[j]];
    sol.x[j] = v + cf.lower_shift[j];
  }
  sol.objective_value = 0.0;
  for (int j = 0; j < nv; ++j) sol.objective_value += lp.objective[j] * sol.x[j];

  sol.canonical_dual.assign(m, 0.0);
  for (int j = 0; j < tb.ncols; ++j) {
    int id = tb.col_id[j];
    if (tb.is_slack(id)) sol.canonical_dual[id - tb.nstruct] = -tb.t[m][j];
  }
  sol.canonical_a = cf.a;
  sol.canonical_b = cf.b;
  sol.canonical_c = cf.c;
  sol.canonical_shift = cf.shift;
  return sol;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& r : lp.rows) {
    double ax = 0.0;
    for (size_t j = 0; j < r.a.size(); ++j) ax += r.a[j] * x[j];
    double v = 0.0;
    if (r.rel == Relation::kLe) v = ax - r.rhs;
    if (r.rel == Relation::kGe) v = r.rhs - ax;
    if (r.rel == Relation::kEq) v = std::fabs(ax - r.rhs);
    worst = std::max(worst, v);
  }
  std::vector<double> lower = lp.lower;
  lower.resize(lp.num_vars(), 0.0);
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (!std::isinf(lower[j])) worst = std::max(worst, lower[j] - x[j]);
    if (j < static_cast<int>(lp.upper.size()) && lp.upper[j])
      worst = std::max(worst, x[j] - *lp.upper[j]);
  }
  return worst;
}

std::optional<double> dual_bound(const LpSolution& sol, double tol) {
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  const auto& y = sol.canonical_dual;
  const int m = static_cast<int>(sol.canonical_b.size());
  const int n = static_cast<int>(sol.canonical_c.size());
  for (int i = 0; i < m; ++i)
    if (y[i] > tol) return std::nullopt;
  for (int j = 0; j < n; ++j) {
    double aty = 0.0;
    for (int i = 0; i < m; ++i) aty += sol.canonical_a[i][j] * y[i];
    if (aty > sol.canonical_c[j] + tol) return std::nullopt;
  }
  double by = 0.0;
  for (int i = 0; i < m; ++i) by += sol.canonical_b[i] * y[i];
  return by + sol.canonical_shift;
}

}  // namespace kissing
