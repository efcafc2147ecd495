#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jlp/channel.hpp"
#include "jlp/ldpc.hpp"
#include "jlp/metrics.hpp"

namespace jlp {

enum class RowFamily : char { config_sum = 'a', trellis_sum = 'b', coupling = 'c', flow = 'd' };

/// The joint LP over trellis flows g (N*O variables, section-major) followed
/// by check-configuration weights w (2^{|N(j)|-1} per check).
struct LpProblemP {
  int n = 0;
  int o = 0;
  int num_states = 0;
  int p_index = 0;  // 0-based section carrying the sum-to-one row
  int num_g = 0;
  int num_w = 0;
  std::vector<int> w_offset;                          // first w column of check j
  std::vector<std::vector<std::uint32_t>> configs;    // E_j as masks over N(j)
  std::vector<double> cost;                           // b for g, 0 for w
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> rhs;
  std::vector<RowFamily> family;
  std::vector<std::string> row_names;

  int num_vars() const { return num_g + num_w; }
  int g_index(int i, int e) const { return i * o + e; }
};

enum class VertexKind { integral, fractional };

struct LpSolution {
  std::vector<double> g;               // N x O
  std::vector<std::vector<double>> w;  // per check, aligned with configs
  double objective = 0.0;
  VertexKind kind = VertexKind::fractional;
};

constexpr double kLpIntegralityTol = 1e-6;
constexpr double kIterativeIntegralityTol = 1e-3;

LpProblemP build_problem_p(const Trellis& trellis, const LdpcCode& code,
                           const BranchMetrics& metrics, int p_index = 0);

/// Solves Problem-P; throws std::runtime_error if the LP is infeasible or
/// unbounded (construction bug).
LpSolution simplex_solve(const LpProblemP& problem);

/// Max absolute violation of every equality row and of x >= 0.
double problem_residual(const LpProblemP& problem, std::span<const double> g,
                        const std::vector<std::vector<double>>& w);

/// Integral iff every entry is within tol of {0,1}.
VertexKind classify_flows(std::span<const double> g, double tol);

/// CPLEX LP text of the problem.
std::string export_lp(const LpProblemP& problem);

struct EdgePath {
  std::vector<int> path;
  double value = 0.0;
};

/// Min-cost edge path; ties go to the lower edge index (and lower final state).
EdgePath viterbi_ml_edge_path(const Trellis& trellis, const BranchMetrics& metrics);

struct JointMl {
  BitVector codeword;
  State start_state = 0;
  std::vector<int> path;
  double value = 0.0;
};

/// Brute force over every codeword and start state; ties toward the
/// lexicographically smallest codeword.
JointMl exhaustive_joint_ml(const Trellis& trellis, const LdpcCode& code,
                            const BranchMetrics& metrics);

struct HardRecursions {
  std::vector<double> fwd;  // n_fwd, (N+1) x S
  std::vector<double> bwd;  // n_bwd, (N+1) x S
  double objective = 0.0;   // min_e [Gamma_p - n_fwd_{p} + n_bwd_{p+1}]
};

/// Viterbi-style recursions on Gamma = b - [x=1] sum_j m_{i,j}; `m` indexed
/// by Tanner edge (may be empty when the code has no checks).
HardRecursions hard_min_recursions(const Trellis& trellis, const BranchMetrics& metrics,
                                   const LdpcCode& code, std::span<const double> m,
                                   int p_index = 0);

}  // namespace jlp
