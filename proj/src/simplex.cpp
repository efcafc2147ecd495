#include "jlp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jlp/util.hpp"

namespace jlp {

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), width_(cols + 1), t_(static_cast<std::size_t>(rows + 1) * (cols + 1), 0.0) {}

  double& operator()(int r, int c) { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  double operator()(int r, int c) const { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  int rhs() const { return width_ - 1; }
  int obj() const { return rows_; }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / (*this)(pr, pc);
    for (int c = 0; c < width_; ++c) (*this)(pr, c) *= inv;
    (*this)(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = (*this)(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) (*this)(r, c) -= f * (*this)(pr, c);
      (*this)(r, pc) = 0.0;
    }
  }

 private:
  int rows_;
  int width_;
  std::vector<double> t_;
};

// Runs Bland iterations over columns [0, allowed). Returns false if unbounded.
bool run_simplex(Tableau& t, std::vector<int>& basis, const std::vector<char>& active_row,
                 int allowed, double tol, int& pivots) {
  const int rows = static_cast<int>(basis.size());
  const int max_pivots = 50000 + 100 * (rows + allowed);
  while (true) {
    int enter = -1;
    for (int c = 0; c < allowed; ++c) {
      if (t(t.obj(), c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (!active_row[r]) continue;
      const double coef = t(r, enter);
      if (coef <= tol) continue;
      const double ratio = t(r, t.rhs()) / coef;
      if (leave < 0 || ratio < best - 1e-12) {
        leave = r;
        best = ratio;
      } else if (ratio <= best + 1e-12 && basis[r] < basis[leave]) {
        leave = r;
        best = std::min(best, ratio);
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
    if (++pivots > max_pivots) throw NumericalAbort("simplex pivot limit exceeded");
  }
}

}  // namespace

SimplexResult simplex_minimize(const DenseLp& lp, double tol) {
  const int m = lp.rows;
  const int n = lp.cols;
  if (static_cast<int>(lp.b.size()) != m || static_cast<int>(lp.c.size()) != n ||
      lp.a.size() != static_cast<std::size_t>(m) * n) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }
  Tableau t(m, n + m);
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    const double sign = lp.b[r] < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t(r, c) = sign * lp.at(r, c);
    t(r, n + r) = 1.0;
    t(r, t.rhs()) = sign * lp.b[r];
    basis[r] = n + r;
  }
  // phase one: minimize the sum of artificials
  for (int c = 0; c <= t.rhs(); ++c) {
    if (c >= n && c < n + m) continue;
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += t(r, c);
    t(t.obj(), c) = -s;
  }
  std::vector<char> active(static_cast<std::size_t>(m), 1);
  SimplexResult res;
  run_simplex(t, basis, active, n, tol, res.pivots);
  double scale = 1.0;
  for (double v : lp.b) scale = std::max(scale, std::abs(v));
  if (-t(t.obj(), t.rhs()) > 1e-7 * scale) {
    res.status = LpStatus::infeasible;
    return res;
  }
  // drive remaining artificials out of the basis
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    int col = -1;
    double best = tol;
    for (int c = 0; c < n; ++c) {
      if (std::abs(t(r, c)) > best) {
        best = std::abs(t(r, c));
        col = c;
        break;
      }
    }
    if (col >= 0) {
      t.pivot(r, col);
      basis[r] = col;
    } else {
      active[r] = 0;
    }
  }
  // phase two objective row
  for (int c = 0; c <= t.rhs(); ++c) t(t.obj(), c) = c < n ? lp.c[c] : 0.0;
  for (int r = 0; r < m; ++r) {
    if (!active[r]) continue;
    const double cb = lp.c[basis[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c <= t.rhs(); ++c) t(t.obj(), c) -= cb * t(r, c);
  }
  if (!run_simplex(t, basis, active, n, tol, res.pivots)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < m; ++r) {
    if (active[r] && basis[r] < n) res.x[basis[r]] = std::max(0.0, t(r, t.rhs()));
  }
  for (double& v : res.x) {
    if (v < 1e-13) v = 0.0;
  }
  res.objective = 0.0;
  for (int c = 0; c < n; ++c) res.objective += lp.c[c] * res.x[c];
  return res;
}

}  // namespace jlp
