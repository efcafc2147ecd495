#include "jlp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace jlp {

namespace {

void add_initial_term(const Trellis& trellis, BranchMetrics& out) {
  const auto& p0 = trellis.initial_dist();
  for (int e = 0; e < out.o; ++e) {
    const double p = p0[trellis.from(e)];
    out(0, e) += p > 0.0 ? -std::log(p) : kImpossibleStateCost;
  }
}

}  // namespace

BranchMetrics awgn_metrics(const Trellis& trellis, std::span<const double> y, bool include_p0,
                           double scaled_sigma) {
  if (static_cast<int>(y.size()) != trellis.length()) {
    throw std::invalid_argument("received vector length does not match trellis length");
  }
  BranchMetrics out{trellis.length(), trellis.num_edges(), {}};
  out.b.resize(static_cast<std::size_t>(out.n) * out.o);
  const double scale = scaled_sigma > 0.0 ? 1.0 / (2.0 * scaled_sigma * scaled_sigma) : 1.0;
  for (int i = 0; i < out.n; ++i) {
    for (int e = 0; e < out.o; ++e) {
      const double d = y[i] - trellis.output(e);
      out(i, e) = d * d * scale;
    }
  }
  if (include_p0) add_initial_term(trellis, out);
  return out;
}

BranchMetrics general_metrics(const Trellis& trellis, std::span<const double> loglik,
                              bool include_p0) {
  BranchMetrics out{trellis.length(), trellis.num_edges(), {}};
  if (loglik.size() != static_cast<std::size_t>(out.n) * out.o) {
    throw std::invalid_argument("log-likelihood table has wrong size");
  }
  out.b.assign(loglik.begin(), loglik.end());
  for (double v : out.b) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite log-likelihood");
  }
  if (include_p0) add_initial_term(trellis, out);
  return out;
}

double path_metric(const BranchMetrics& b, std::span<const int> path) {
  double total = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) total += b(static_cast<int>(i), path[i]);
  return total;
}

}  // namespace jlp
