#pragma once

#include <vector>

namespace jlp {

/// min c^T x subject to A x = b, x >= 0, with A dense row-major.
struct DenseLp {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(int r, int col) { return a[static_cast<std::size_t>(r) * cols + col]; }
  double at(int r, int col) const { return a[static_cast<std::size_t>(r) * cols + col]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

/// Two-phase tableau simplex with Bland's rule. Deterministic: entering
/// variable is the lowest-index improving column, leaving row the lowest
/// basic index among ratio ties. Redundant equality rows are dropped after
/// phase one.
SimplexResult simplex_minimize(const DenseLp& lp, double tol = 1e-9);

}  // namespace jlp
