#include "jlp/softmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jlp {

double log_sum_exp(std::span<const double> x) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : x) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double v : x) s += std::exp(v - hi);
  return hi + std::log(s);
}

double log_sum_exp2(double a, double b) {
  const double hi = std::max(a, b);
  if (!std::isfinite(hi)) return hi;
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

double softmin(std::span<const double> x, double k) {
  if (x.empty()) throw std::invalid_argument("softmin of empty set");
  if (!(k > 0.0)) throw std::invalid_argument("softmin temperature must be positive");
  double lo = std::numeric_limits<double>::infinity();
  for (double v : x) lo = std::min(lo, v);
  double s = 0.0;
  for (double v : x) s += std::exp(-k * (v - lo));
  return lo - std::log(s) / k;
}

}  // namespace jlp
