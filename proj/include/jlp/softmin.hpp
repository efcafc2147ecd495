#pragma once

#include <span>

namespace jlp {

/// ln Σ e^{x_i} with max subtraction; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> x);
double log_sum_exp2(double a, double b);

/// -(1/K) ln Σ e^{-K x_i}. Satisfies min(x) - ln(n)/K <= softmin <= min(x).
double softmin(std::span<const double> x, double k);

}  // namespace jlp
