#include "jlp/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "jlp/simplex.hpp"
#include "jlp/softmin.hpp"

namespace jlp {

std::vector<double> project_symbolwise(std::span<const double> g, const Trellis& trellis) {
  const int o = trellis.num_edges();
  const int n = static_cast<int>(g.size()) / o;
  std::vector<double> f(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < o; ++e) {
      if (trellis.input(e)) f[i] += g[static_cast<std::size_t>(i) * o + e];
    }
  }
  return f;
}

std::vector<double> project_signal_space(std::span<const double> g, const Trellis& trellis) {
  const int o = trellis.num_edges();
  const int n = static_cast<int>(g.size()) / o;
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < o; ++e) p[i] += g[static_cast<std::size_t>(i) * o + e] * trellis.output(e);
  }
  return p;
}

PcwKind classify(std::span<const double> g, double tol) {
  return classify_flows(g, tol) == VertexKind::integral ? PcwKind::codeword
                                                        : PcwKind::pseudo_codeword;
}

const char* to_string(PcwKind kind) {
  return kind == PcwKind::codeword ? "TCW" : "JD-TPCW";
}

double d_gen_squared(std::span<const double> c, std::span<const double> g,
                     const Trellis& trellis) {
  const auto p = project_signal_space(g, trellis);
  if (p.size() != c.size()) throw std::invalid_argument("reference length mismatch");
  const int o = trellis.num_edges();
  double d2 = 0.0;
  double second = 0.0;
  double p2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d2 += (c[i] - p[i]) * (c[i] - p[i]);
    p2 += p[i] * p[i];
    for (int e = 0; e < o; ++e) {
      second += g[i * o + e] * trellis.output(e) * trellis.output(e);
    }
  }
  if (!(d2 > 0.0)) throw std::domain_error("generalized distance undefined: p equals c");
  const double var = std::max(0.0, second - p2);
  return (d2 + var) * (d2 + var) / d2;
}

double d_gen(std::span<const double> c, std::span<const double> g, const Trellis& trellis) {
  return std::sqrt(d_gen_squared(c, g, trellis));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double pairwise_error_prob(double d, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (d < 0.0) throw std::invalid_argument("distance must be non-negative");
  return q_function(d / (2.0 * sigma));
}

bool DistanceSpectrum::add(std::span<const double> g, const Trellis& trellis) {
  std::string key;
  key.reserve(g.size() * 6);
  for (double v : g) {
    key += std::to_string(std::llround(v * 1e4));
    key += ',';
  }
  if (!seen.insert(key).second) return false;
  const double d = d_gen(signal, g, trellis);
  auto& entry = entries[quantize(d)];
  if (entry.multiplicity == 0) {
    entry.d_gen = quantize(d) * 1e-4;
    entry.example_f = project_symbolwise(g, trellis);
  }
  ++entry.multiplicity;
  return true;
}

std::vector<double> DistanceSpectrum::distances() const {
  std::vector<double> out;
  for (const auto& [k, e] : entries) out.push_back(e.d_gen);
  return out;
}

long DistanceSpectrum::total_multiplicity() const {
  long total = 0;
  for (const auto& [k, e] : entries) total += e.multiplicity;
  return total;
}

double union_bound(const DistanceSpectrum& spectrum, double sigma) {
  double total = 0.0;
  for (const auto& [k, e] : spectrum.entries) {
    total += static_cast<double>(e.multiplicity) * pairwise_error_prob(e.d_gen, sigma);
  }
  return total;
}

GapBound gap_delta(const LdpcCode& code, const Trellis& trellis, double k1, double k2,
                   double eps, double sum_abs_b, double c_const) {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("K1 and K2 must be positive");
  const double n = code.n();
  GapBound out;
  out.code_term = (1.0 - code.rate() + code.avg_check_degree_per_bit()) * std::log(2.0) / k1;
  out.trellis_term = std::log(static_cast<double>(trellis.num_edges())) / (k2 * n);
  out.c_const = c_const;
  out.eps_term = eps * (3.0 / n * sum_abs_b + c_const);
  out.delta = out.code_term + out.trellis_term + out.eps_term;
  return out;
}

double entropy(std::span<const double> x) {
  double h = 0.0;
  for (double v : x) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

namespace {

// A distribution over the even configurations with the requested marginals.
std::vector<double> config_distribution(const std::vector<std::uint32_t>& configs, int d,
                                        std::span<const double> marg) {
  DenseLp lp;
  lp.rows = d + 1;
  lp.cols = static_cast<int>(configs.size());
  lp.a.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0.0);
  lp.b.assign(static_cast<std::size_t>(lp.rows), 0.0);
  lp.c.assign(static_cast<std::size_t>(lp.cols), 0.0);
  for (int c = 0; c < lp.cols; ++c) {
    lp.at(0, c) = 1.0;
    for (int k = 0; k < d; ++k) {
      if (configs[c] >> k & 1) lp.at(k + 1, c) = 1.0;
    }
  }
  lp.b[0] = 1.0;
  for (int k = 0; k < d; ++k) lp.b[k + 1] = marg[k];
  const auto res = simplex_minimize(lp, 1e-12);
  if (res.status != LpStatus::optimal) {
    throw ConstructionRefused("no check distribution matches the smoothed marginals");
  }
  return res.x;
}

}  // namespace

PrimalFromDual primal_from_dual(const MessageState& messages, const BranchMetrics& metrics,
                                const LdpcCode& code, const Trellis& trellis,
                                const DecoderParams& params) {
  MessageState s = messages;
  refresh_from_messages(s, metrics, code, trellis, params);
  const int n = s.n;
  const int o = s.o;
  const double k1 = params.k1;
  const auto g = trellis_marginals(s, trellis);

  std::vector<double> tau(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < o; ++e) {
      if (trellis.input(e)) tau[i] += g[static_cast<std::size_t>(i) * o + e];
    }
  }

  // w_new per check and its exact marginals
  std::vector<std::vector<std::uint32_t>> configs;
  std::vector<std::vector<double>> w_new;
  std::vector<double> lam_j(static_cast<std::size_t>(code.num_edges()), 0.0);
  for (int j = 0; j < code.m(); ++j) {
    configs.push_back(check_configs(code, j));
    const int d = code.check_degree(j);
    const int off = code.check_offset(j);
    std::vector<double> logits;
    for (auto mask : configs.back()) {
      double sum = 0.0;
      for (int k = 0; k < d; ++k) {
        if (mask >> k & 1) sum += s.m[off + k];
      }
      logits.push_back(-k1 * sum);
    }
    const double z = log_sum_exp(logits);
    std::vector<double> w(logits.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
      w[c] = std::exp(logits[c] - z);
      for (int k = 0; k < d; ++k) {
        if (configs.back()[c] >> k & 1) lam_j[off + k] += w[c];
      }
    }
    w_new.push_back(std::move(w));
  }

  double eps = 0.0;
  for (int e = 0; e < code.num_edges(); ++e) {
    eps = std::max(eps, std::abs(lam_j[e] - tau[code.edge_var(e)]));
  }
  if (eps > 1.0 / 6.0) {
    throw ConstructionRefused("message residual " + std::to_string(eps) + " exceeds 1/6");
  }

  PrimalFromDual out;
  out.eps = eps;
  const double shrink = 1.0 - 6.0 * eps;
  out.g.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out.g[k] = shrink * g[k] + 6.0 * eps / o;

  for (int j = 0; j < code.m(); ++j) {
    auto w = w_new[j];
    if (eps > 0.0) {
      const int d = code.check_degree(j);
      const int off = code.check_offset(j);
      std::vector<double> marg(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        const int i = code.check_neighbors(j)[k];
        marg[k] = 0.5 + shrink * (tau[i] - lam_j[off + k]) / (6.0 * eps);
      }
      const auto u = config_distribution(configs[j], d, marg);
      for (std::size_t c = 0; c < w.size(); ++c) w[c] = shrink * w[c] + 6.0 * eps * u[c];
    }
    out.w.push_back(std::move(w));
  }

  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < o; ++e) {
      const double b = metrics(i, e);
      value += b * out.g[static_cast<std::size_t>(i) * o + e];
      out.sum_abs_b += std::abs(b);
    }
  }
  out.value = value;
  double h_code = 0.0;
  for (const auto& w : out.w) h_code += entropy(w);
  const double h_trellis = entropy(std::span<const double>(out.g.data(), static_cast<std::size_t>(o)));
  out.ps_value = value - h_code / k1 - h_trellis / params.k2;
  double abs_m = 0.0;
  for (double v : s.m) abs_m += std::abs(v);
  out.c_const = abs_m / n;
  return out;
}

double lcp_violation(std::span<const double> f, const LdpcCode& code) {
  double worst = 0.0;
  for (double v : f) worst = std::max({worst, -v, v - 1.0});
  for (int j = 0; j < code.m(); ++j) {
    const auto& nb = code.check_neighbors(j);
    const int d = static_cast<int>(nb.size());
    if (d > 20) throw std::invalid_argument("check degree too large for LCP enumeration");
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      const int size = std::popcount(mask);
      if (size % 2 == 0) continue;
      double lhs = 0.0;
      for (int k = 0; k < d; ++k) lhs += (mask >> k & 1) ? f[nb[k]] : -f[nb[k]];
      worst = std::max(worst, lhs - (size - 1));
    }
  }
  return worst;
}

double problem_p_residual(std::span<const double> g, const std::vector<std::vector<double>>& w,
                          const LdpcCode& code, const Trellis& trellis, int p_index) {
  BranchMetrics zero{trellis.length(), trellis.num_edges(), {}};
  zero.b.assign(static_cast<std::size_t>(zero.n) * zero.o, 0.0);
  const auto problem = build_problem_p(trellis, code, zero, p_index);
  return problem_residual(problem, g, w);
}

}  // namespace jlp
