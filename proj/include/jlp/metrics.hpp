#pragma once

#include <span>
#include <vector>

#include "jlp/channel.hpp"

namespace jlp {

/// Stand-in for -ln 0 on impossible initial states.
constexpr double kImpossibleStateCost = 1e6;

/// N x O branch costs b_{i,e}, row-major by section.
struct BranchMetrics {
  int n = 0;
  int o = 0;
  std::vector<double> b;

  double operator()(int i, int e) const { return b[static_cast<std::size_t>(i) * o + e]; }
  double& operator()(int i, int e) { return b[static_cast<std::size_t>(i) * o + e]; }
};

/// b_{i,e} = (y_i - a(e))^2, or divided by 2 sigma^2 when `scaled_sigma` > 0.
/// With include_p0, section 0 gets -ln P0(s(e)).
BranchMetrics awgn_metrics(const Trellis& trellis, std::span<const double> y, bool include_p0,
                           double scaled_sigma = 0.0);

/// Per-edge negative log-likelihoods (N x O, row-major) plus the P0 term.
BranchMetrics general_metrics(const Trellis& trellis, std::span<const double> loglik,
                              bool include_p0 = true);

/// Sum of b along an edge path.
double path_metric(const BranchMetrics& b, std::span<const int> path);

}  // namespace jlp
