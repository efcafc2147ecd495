#include "jlp/lpexact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jlp/simplex.hpp"

namespace jlp {

LpProblemP build_problem_p(const Trellis& trellis, const LdpcCode& code,
                           const BranchMetrics& metrics, int p_index) {
  if (code.n() != trellis.length() || metrics.n != trellis.length() ||
      metrics.o != trellis.num_edges()) {
    throw std::invalid_argument("code, trellis and metrics dimensions disagree");
  }
  if (p_index < 0 || p_index >= trellis.length()) throw std::invalid_argument("p_index out of range");
  LpProblemP p;
  p.n = trellis.length();
  p.o = trellis.num_edges();
  p.num_states = trellis.num_states();
  p.p_index = p_index;
  p.num_g = p.n * p.o;
  int col = p.num_g;
  for (int j = 0; j < code.m(); ++j) {
    p.configs.push_back(check_configs(code, j));
    p.w_offset.push_back(col);
    col += static_cast<int>(p.configs.back().size());
  }
  p.num_w = col - p.num_g;
  p.cost.assign(static_cast<std::size_t>(col), 0.0);
  for (int i = 0; i < p.n; ++i) {
    for (int e = 0; e < p.o; ++e) p.cost[p.g_index(i, e)] = metrics(i, e);
  }

  auto add_row = [&](RowFamily fam, std::string name, std::vector<std::pair<int, double>> row,
                     double rhs) {
    p.rows.push_back(std::move(row));
    p.rhs.push_back(rhs);
    p.family.push_back(fam);
    p.row_names.push_back(std::move(name));
  };

  for (int j = 0; j < code.m(); ++j) {
    std::vector<std::pair<int, double>> row;
    for (std::size_t c = 0; c < p.configs[j].size(); ++c) row.emplace_back(p.w_offset[j] + static_cast<int>(c), 1.0);
    add_row(RowFamily::config_sum, "a_" + std::to_string(j + 1), std::move(row), 1.0);
  }
  {
    std::vector<std::pair<int, double>> row;
    for (int e = 0; e < p.o; ++e) row.emplace_back(p.g_index(p_index, e), 1.0);
    add_row(RowFamily::trellis_sum, "b_" + std::to_string(p_index + 1), std::move(row), 1.0);
  }
  for (int j = 0; j < code.m(); ++j) {
    const auto& nb = code.check_neighbors(j);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      std::vector<std::pair<int, double>> row;
      for (std::size_t c = 0; c < p.configs[j].size(); ++c) {
        if (p.configs[j][c] >> k & 1) row.emplace_back(p.w_offset[j] + static_cast<int>(c), 1.0);
      }
      for (int e = 0; e < p.o; ++e) {
        if (trellis.input(e) == 1) row.emplace_back(p.g_index(nb[k], e), -1.0);
      }
      add_row(RowFamily::coupling, "c_" + std::to_string(nb[k] + 1) + "_" + std::to_string(j + 1),
              std::move(row), 0.0);
    }
  }
  for (int i = 0; i + 1 < p.n; ++i) {
    for (int k = 0; k < p.num_states; ++k) {
      std::vector<std::pair<int, double>> row;
      for (int e : trellis.edges_into(k)) row.emplace_back(p.g_index(i, e), 1.0);
      for (int e : trellis.edges_from(k)) row.emplace_back(p.g_index(i + 1, e), -1.0);
      add_row(RowFamily::flow, "d_" + std::to_string(i + 1) + "_" + std::to_string(k), std::move(row), 0.0);
    }
  }
  return p;
}

VertexKind classify_flows(std::span<const double> g, double tol) {
  for (double v : g) {
    if (std::min(std::abs(v), std::abs(v - 1.0)) > tol) return VertexKind::fractional;
  }
  return VertexKind::integral;
}

LpSolution simplex_solve(const LpProblemP& problem) {
  DenseLp lp;
  lp.rows = static_cast<int>(problem.rows.size());
  lp.cols = problem.num_vars();
  lp.a.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0.0);
  for (int r = 0; r < lp.rows; ++r) {
    for (const auto& [c, v] : problem.rows[r]) lp.at(r, c) += v;
  }
  lp.b = problem.rhs;
  lp.c = problem.cost;
  const auto res = simplex_minimize(lp);
  if (res.status != LpStatus::optimal) {
    throw std::runtime_error(res.status == LpStatus::infeasible ? "Problem-P is infeasible"
                                                                : "Problem-P is unbounded");
  }
  LpSolution sol;
  sol.g.assign(res.x.begin(), res.x.begin() + problem.num_g);
  for (std::size_t j = 0; j < problem.configs.size(); ++j) {
    const auto begin = res.x.begin() + problem.w_offset[j];
    sol.w.emplace_back(begin, begin + static_cast<long>(problem.configs[j].size()));
  }
  sol.objective = res.objective;
  sol.kind = classify_flows(sol.g, kLpIntegralityTol);
  return sol;
}

double problem_residual(const LpProblemP& problem, std::span<const double> g,
                        const std::vector<std::vector<double>>& w) {
  std::vector<double> x(g.begin(), g.end());
  for (const auto& wj : w) x.insert(x.end(), wj.begin(), wj.end());
  if (static_cast<int>(x.size()) != problem.num_vars()) {
    throw std::invalid_argument("solution size does not match problem");
  }
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    double s = 0.0;
    for (const auto& [c, v] : problem.rows[r]) s += v * x[c];
    worst = std::max(worst, std::abs(s - problem.rhs[r]));
  }
  return worst;
}

std::string export_lp(const LpProblemP& problem) {
  auto var_name = [&](int c) {
    if (c < problem.num_g) {
      return "g_" + std::to_string(c / problem.o + 1) + "_" + std::to_string(c % problem.o + 1);
    }
    int j = static_cast<int>(problem.w_offset.size()) - 1;
    while (problem.w_offset[j] > c) --j;
    return "w_" + std::to_string(j + 1) + "_" + std::to_string(c - problem.w_offset[j] + 1);
  };
  std::ostringstream os;
  os.precision(17);
  os << "\\ joint LP decoding problem\nMinimize\n obj:";
  bool any = false;
  for (int c = 0; c < problem.num_vars(); ++c) {
    if (problem.cost[c] == 0.0) continue;
    os << (problem.cost[c] < 0 ? " - " : (any ? " + " : " ")) << std::abs(problem.cost[c]) << ' '
       << var_name(c);
    any = true;
  }
  if (!any) os << " 0 " << var_name(0);
  os << "\nSubject To\n";
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    os << ' ' << problem.row_names[r] << ':';
    bool first = true;
    for (const auto& [c, v] : problem.rows[r]) {
      if (v < 0) {
        os << " - ";
      } else {
        os << (first ? " " : " + ");
      }
      if (std::abs(v) != 1.0) os << std::abs(v) << ' ';
      os << var_name(c);
      first = false;
    }
    os << " = " << problem.rhs[r] << '\n';
  }
  os << "End\n";
  return os.str();
}

EdgePath viterbi_ml_edge_path(const Trellis& trellis, const BranchMetrics& metrics) {
  const int n = trellis.length();
  const int ns = trellis.num_states();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<std::size_t>(ns), 0.0);
  std::vector<int> back(static_cast<std::size_t>(n) * ns, -1);
  for (int t = 0; t < n; ++t) {
    std::vector<double> next(static_cast<std::size_t>(ns), inf);
    for (int e = 0; e < trellis.num_edges(); ++e) {
      const double v = cost[trellis.from(e)] + metrics(t, e);
      const int k = trellis.to(e);
      if (v < next[k]) {
        next[k] = v;
        back[static_cast<std::size_t>(t) * ns + k] = e;
      }
    }
    cost = std::move(next);
  }
  int k = 0;
  for (int s = 1; s < ns; ++s) {
    if (cost[s] < cost[k]) k = s;
  }
  EdgePath out;
  out.value = cost[k];
  out.path.resize(static_cast<std::size_t>(n));
  for (int t = n - 1; t >= 0; --t) {
    const int e = back[static_cast<std::size_t>(t) * ns + k];
    out.path[t] = e;
    k = trellis.from(e);
  }
  return out;
}

JointMl exhaustive_joint_ml(const Trellis& trellis, const LdpcCode& code,
                            const BranchMetrics& metrics) {
  if (code.n() > 20) throw std::invalid_argument("exhaustive ML limited to N <= 20");
  const auto words = all_codewords(code);
  JointMl best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& w : words) {
    for (State s = 0; s < trellis.num_states(); ++s) {
      auto path = trellis.path_of(w, s);
      const double v = path_metric(metrics, path);
      if (v < best.value) {
        best.value = v;
        best.codeword = w;
        best.start_state = s;
        best.path = std::move(path);
      }
    }
  }
  return best;
}

HardRecursions hard_min_recursions(const Trellis& trellis, const BranchMetrics& metrics,
                                   const LdpcCode& code, std::span<const double> m,
                                   int p_index) {
  const int n = trellis.length();
  const int ns = trellis.num_states();
  const int o = trellis.num_edges();
  if (p_index < 0 || p_index >= n) throw std::invalid_argument("p_index out of range");
  std::vector<double> gam(static_cast<std::size_t>(n) * o);
  for (int i = 0; i < n; ++i) {
    double sm = 0.0;
    if (!m.empty()) {
      for (int e : code.var_edges(i)) sm += m[e];
    }
    for (int e = 0; e < o; ++e) gam[static_cast<std::size_t>(i) * o + e] = metrics(i, e) - (trellis.input(e) ? sm : 0.0);
  }
  const double inf = std::numeric_limits<double>::infinity();
  HardRecursions out;
  out.fwd.assign(static_cast<std::size_t>(n + 1) * ns, 0.0);
  out.bwd.assign(out.fwd.size(), 0.0);
  for (int t = 1; t <= n; ++t) {
    for (int k = 0; k < ns; ++k) {
      double best = inf;
      for (int e : trellis.edges_into(k)) {
        best = std::min(best, -out.fwd[static_cast<std::size_t>(t - 1) * ns + trellis.from(e)] +
                                  gam[static_cast<std::size_t>(t - 1) * o + e]);
      }
      out.fwd[static_cast<std::size_t>(t) * ns + k] = -best;
    }
  }
  for (int t = n - 1; t >= 0; --t) {
    for (int k = 0; k < ns; ++k) {
      double best = inf;
      for (int e : trellis.edges_from(k)) {
        best = std::min(best, out.bwd[static_cast<std::size_t>(t + 1) * ns + trellis.to(e)] +
                                  gam[static_cast<std::size_t>(t) * o + e]);
      }
      out.bwd[static_cast<std::size_t>(t) * ns + k] = best;
    }
  }
  double obj = inf;
  for (int e = 0; e < o; ++e) {
    obj = std::min(obj, gam[static_cast<std::size_t>(p_index) * o + e] -
                            out.fwd[static_cast<std::size_t>(p_index) * ns + trellis.from(e)] +
                            out.bwd[static_cast<std::size_t>(p_index + 1) * ns + trellis.to(e)]);
  }
  out.objective = obj;
  return out;
}

}  // namespace jlp
