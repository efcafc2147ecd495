#include "jlp/ijlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "jlp/softmin.hpp"
#include "jlp/util.hpp"

namespace jlp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kClampL = 1.0 - 1e-15;

void require_finite(double z, const char* where, int t) {
  if (!std::isfinite(z)) {
    throw NumericalAbort(std::string(where) + ": degenerate normalization at section " +
                         std::to_string(t));
  }
}

void forward_pass(MessageState& s, const Trellis& trellis, int from_t, int to_t) {
  const int ns = s.num_states;
  std::vector<double> terms;
  for (int t = from_t; t < to_t; ++t) {
    double z = kNegInf;
    for (int k = 0; k < ns; ++k) {
      terms.clear();
      for (int e : trellis.edges_into(k)) terms.push_back(s.alpha(t, trellis.from(e)) + s.lam(t, e));
      const double u = log_sum_exp(terms);
      s.alpha(t + 1, k) = u;
      z = log_sum_exp2(z, u);
    }
    require_finite(z, "forward recursion", t);
    for (int k = 0; k < ns; ++k) s.alpha(t + 1, k) -= z;
    s.alpha_offset[t + 1] = s.alpha_offset[t] + z;
  }
}

void backward_pass(MessageState& s, const Trellis& trellis) {
  const int ns = s.num_states;
  std::vector<double> terms;
  for (int t = s.n - 1; t >= 0; --t) {
    double z = kNegInf;
    for (int k = 0; k < ns; ++k) {
      terms.clear();
      for (int e : trellis.edges_from(k)) terms.push_back(s.beta(t + 1, trellis.to(e)) + s.lam(t, e));
      const double u = log_sum_exp(terms);
      s.beta(t, k) = u;
      z = log_sum_exp2(z, u);
    }
    require_finite(z, "backward recursion", t);
    for (int k = 0; k < ns; ++k) s.beta(t, k) -= z;
    s.beta_offset[t] = s.beta_offset[t + 1] + z;
  }
}

// ln of the summed alpha_t + lambda + beta_{t+1} over edges with input x.
template <typename Lam>
double section_mass(const MessageState& s, const Trellis& trellis, int t, int x, Lam lam) {
  thread_local std::vector<double> terms;
  terms.clear();
  for (int e = 0; e < s.o; ++e) {
    if (trellis.input(e) != x) continue;
    terms.push_back(s.alpha(t, trellis.from(e)) + lam(e) + s.beta(t + 1, trellis.to(e)));
  }
  if (terms.empty()) throw std::logic_error("trellis section lacks edges for one input value");
  return log_sum_exp(terms);
}

}  // namespace

void DecoderParams::validate() const {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("K1 and K2 must be positive");
  if (inner_rounds < 1) throw std::invalid_argument("inner_rounds must be >= 1");
  if (outer_max < 1) throw std::invalid_argument("outer_max must be >= 1");
}

MessageState MessageState::zeros(const LdpcCode& code, const Trellis& trellis) {
  if (code.n() != trellis.length()) {
    throw std::invalid_argument("code length does not match trellis length");
  }
  MessageState s;
  s.n = trellis.length();
  s.num_states = trellis.num_states();
  s.o = trellis.num_edges();
  s.m.assign(static_cast<std::size_t>(code.num_edges()), 0.0);
  s.big_m.assign(s.m.size(), 0.0);
  s.gamma.assign(static_cast<std::size_t>(s.n), 0.0);
  s.log_lambda.assign(static_cast<std::size_t>(s.n) * s.o, 0.0);
  const std::size_t nodes = static_cast<std::size_t>(s.n + 1) * s.num_states;
  const double uniform = -std::log(static_cast<double>(s.num_states));
  s.log_alpha.assign(nodes, uniform);
  s.log_beta.assign(nodes, uniform);
  s.alpha_offset.assign(static_cast<std::size_t>(s.n + 1), -uniform);
  s.beta_offset.assign(static_cast<std::size_t>(s.n + 1), -uniform);
  return s;
}

double message_sum(const MessageState& state, const LdpcCode& code, int i) {
  double total = 0.0;
  for (int e : code.var_edges(i)) total += state.m[e];
  return total;
}

void bit_to_trellis(MessageState& state, const BranchMetrics& metrics, const LdpcCode& code,
                    const Trellis& trellis, const DecoderParams& params) {
  for (int i = 0; i < state.n; ++i) {
    const double sm = message_sum(state, code, i);
    for (int e = 0; e < state.o; ++e) {
      const double gamma_cap = metrics(i, e) - (trellis.input(e) == 1 ? sm : 0.0);
      state.lam(i, e) = -params.k2 * gamma_cap;
    }
  }
}

void forward_backward(MessageState& state, const Trellis& trellis) {
  const double uniform = -std::log(static_cast<double>(state.num_states));
  for (int k = 0; k < state.num_states; ++k) {
    state.alpha(0, k) = uniform;
    state.beta(state.n, k) = uniform;
  }
  state.alpha_offset[0] = -uniform;
  state.beta_offset[state.n] = -uniform;
  forward_pass(state, trellis, 0, state.n);
  backward_pass(state, trellis);
}

double trellis_llr(const MessageState& state, const Trellis& trellis, int i) {
  auto lam = [&](int e) { return state.lam(i, e); };
  return section_mass(state, trellis, i, 0, lam) - section_mass(state, trellis, i, 1, lam);
}

void trellis_to_bit(MessageState& state, const Trellis& trellis) {
  for (int i = 0; i < state.n; ++i) state.gamma[i] = trellis_llr(state, trellis, i);
}

double check_message_naive(std::span<const double> others, double k1) {
  double l = 1.0;
  for (double v : others) l *= std::tanh(k1 * v / 2.0);
  l = std::clamp(l, -kClampL, kClampL);
  return (std::log1p(-l) - std::log1p(l)) / k1;
}

double check_message_stable(std::span<const double> others, double k1) {
  double mu = std::numeric_limits<double>::infinity();
  bool negative = false;
  for (double v : others) {
    mu = std::min(mu, std::abs(v));
    if (v < 0.0) negative = !negative;
  }
  double s = 0.0;
  for (double v : others) s += std::exp(-k1 * (std::abs(v) - mu));
  const double mag = std::log(s) / k1 - mu;
  return negative ? -mag : mag;
}

double check_message_accurate(std::span<const double> others, double k1) {
  // p = |l| and d = 1 - |l| accumulated without cancellation
  double p = 1.0;
  double d = 0.0;
  bool negative = false;
  for (double v : others) {
    const double x = k1 * std::abs(v) / 2.0;
    const double q = std::exp(-2.0 * x);
    d += p * (2.0 * q / (1.0 + q));
    p *= std::tanh(x);
    if (v < 0.0) negative = !negative;
  }
  d = std::clamp(d, 1.0 - kClampL, 1.0);
  const double mag = (std::log(d) - std::log1p(1.0 - d)) / k1;
  return negative ? -mag : mag;
}

double check_message(std::span<const double> others, double k1, double big_arg_threshold) {
  if (others.empty()) return check_message_naive(others, k1);
  double mu = std::numeric_limits<double>::infinity();
  for (double v : others) mu = std::min(mu, std::abs(v));
  if (k1 * mu >= big_arg_threshold) return check_message_stable(others, k1);
  return check_message_accurate(others, k1);
}

void compute_check_messages(MessageState& state, const LdpcCode& code,
                            const DecoderParams& params) {
  std::vector<double> others;
  for (int j = 0; j < code.m(); ++j) {
    const int off = code.check_offset(j);
    const int d = code.check_degree(j);
    for (int k = 0; k < d; ++k) {
      others.clear();
      for (int r = 0; r < d; ++r) {
        if (r != k) others.push_back(state.m[off + r]);
      }
      state.big_m[off + k] = check_message(others, params.k1, params.big_arg_threshold);
    }
  }
}

void check_update(MessageState& state, const LdpcCode& code, const DecoderParams& params) {
  compute_check_messages(state, code, params);
  for (int e = 0; e < code.num_edges(); ++e) {
    state.m[e] = state.big_m[e] + state.gamma[code.edge_var(e)] / params.k1;
  }
}

std::uint64_t hash_vector(std::span<const double> v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double x : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

void refresh_from_messages(MessageState& state, const BranchMetrics& metrics,
                           const LdpcCode& code, const Trellis& trellis,
                           const DecoderParams& params) {
  bit_to_trellis(state, metrics, code, trellis, params);
  forward_backward(state, trellis);
  trellis_to_bit(state, trellis);
  compute_check_messages(state, code, params);
}

namespace {

bool dual_evaluable(const LdpcCode& code) {
  return code.max_check_degree() <= kMaxEnumeratedCheckDegree;
}

void cyclic_sweep(MessageState& s, const BranchMetrics& metrics, const LdpcCode& code,
                  const Trellis& trellis, const DecoderParams& params,
                  std::vector<double>* block_trace);

BitVector hard_decision(std::span<const double> gamma) {
  BitVector bits(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) bits[i] = gamma[i] < 0.0 ? 1 : 0;
  return bits;
}

}  // namespace

DecodeResult decode(const BranchMetrics& metrics, const LdpcCode& code, const Trellis& trellis,
                    const DecoderParams& params, const TraceSink& trace,
                    MessageState* final_state) {
  params.validate();
  if (metrics.n != trellis.length() || metrics.o != trellis.num_edges()) {
    throw std::invalid_argument("metrics do not match trellis");
  }
  MessageState state = MessageState::zeros(code, trellis);
  DecodeResult result;
  const bool cyclic = params.schedule == Schedule::cyclic;
  if (cyclic) {
    bit_to_trellis(state, metrics, code, trellis, params);
    forward_backward(state, trellis);
  }
  for (int it = 1; it <= params.outer_max; ++it) {
    if (cyclic) {
      cyclic_sweep(state, metrics, code, trellis, params, nullptr);
      backward_pass(state, trellis);
      trellis_to_bit(state, trellis);
    } else {
      bit_to_trellis(state, metrics, code, trellis, params);
      forward_backward(state, trellis);
      trellis_to_bit(state, trellis);
      for (int r = 0; r < params.inner_rounds; ++r) check_update(state, code, params);
    }

    result.bits = hard_decision(state.gamma);
    result.iterations = it;
    const int sw = syndrome_weight(code, result.bits);
    if (trace) {
      TraceRecord rec;
      rec.iteration = it;
      rec.syndrome_weight = sw;
      rec.gamma_hash = hash_vector(state.gamma);
      rec.dual_objective = std::numeric_limits<double>::quiet_NaN();
      if (dual_evaluable(code)) {
        MessageState copy = state;
        refresh_from_messages(copy, metrics, code, trellis, params);
        rec.dual_objective = dual_objective(copy, code, trellis, params, 0);
      }
      trace(rec);
    }
    if (sw == 0) {
      result.status = DecodeStatus::parity_ok;
      break;
    }
  }
  result.soft = state.gamma;
  if (final_state) *final_state = std::move(state);
  return result;
}

DecodeResult turbo_equalize(const BranchMetrics& metrics, const LdpcCode& code,
                            const Trellis& trellis, int iters, int inner_rounds,
                            MessageState* final_state) {
  DecoderParams p;
  p.k1 = 1.0;
  p.k2 = 1.0;
  p.outer_max = iters;
  p.inner_rounds = inner_rounds;
  return decode(metrics, code, trellis, p, {}, final_state);
}

std::vector<double> reference_bcjr_llr(const BranchMetrics& metrics, const Trellis& trellis,
                                       std::span<const double> prior_llr) {
  using R = long double;
  const int n = trellis.length();
  const int ns = trellis.num_states();
  const int o = trellis.num_edges();
  // gamma(t,e) = P(y_t | e) P(x(e)), rescaled per section
  std::vector<R> g(static_cast<std::size_t>(n) * o);
  for (int t = 0; t < n; ++t) {
    double bmin = std::numeric_limits<double>::infinity();
    for (int e = 0; e < o; ++e) bmin = std::min(bmin, metrics(t, e));
    const R la = prior_llr[t];
    const R p1 = 1.0L / (1.0L + std::exp(la));
    const R p0 = 1.0L - p1;
    for (int e = 0; e < o; ++e) {
      const R lik = std::exp(-static_cast<R>(metrics(t, e) - bmin));
      g[static_cast<std::size_t>(t) * o + e] = lik * (trellis.input(e) ? p1 : p0);
    }
  }
  std::vector<R> a(static_cast<std::size_t>(n + 1) * ns), b(a.size());
  for (int k = 0; k < ns; ++k) {
    a[k] = 1.0L / ns;
    b[static_cast<std::size_t>(n) * ns + k] = 1.0L / ns;
  }
  for (int t = 0; t < n; ++t) {
    R z = 0;
    for (int k = 0; k < ns; ++k) a[static_cast<std::size_t>(t + 1) * ns + k] = 0;
    for (int e = 0; e < o; ++e) {
      const R v = a[static_cast<std::size_t>(t) * ns + trellis.from(e)] * g[static_cast<std::size_t>(t) * o + e];
      a[static_cast<std::size_t>(t + 1) * ns + trellis.to(e)] += v;
      z += v;
    }
    for (int k = 0; k < ns; ++k) a[static_cast<std::size_t>(t + 1) * ns + k] /= z;
  }
  for (int t = n - 1; t >= 0; --t) {
    R z = 0;
    for (int k = 0; k < ns; ++k) b[static_cast<std::size_t>(t) * ns + k] = 0;
    for (int e = 0; e < o; ++e) {
      const R v = b[static_cast<std::size_t>(t + 1) * ns + trellis.to(e)] * g[static_cast<std::size_t>(t) * o + e];
      b[static_cast<std::size_t>(t) * ns + trellis.from(e)] += v;
      z += v;
    }
    for (int k = 0; k < ns; ++k) b[static_cast<std::size_t>(t) * ns + k] /= z;
  }
  std::vector<double> llr(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    R s0 = 0, s1 = 0;
    for (int e = 0; e < o; ++e) {
      const R v = a[static_cast<std::size_t>(t) * ns + trellis.from(e)] *
                  g[static_cast<std::size_t>(t) * o + e] *
                  b[static_cast<std::size_t>(t + 1) * ns + trellis.to(e)];
      (trellis.input(e) ? s1 : s0) += v;
    }
    llr[t] = static_cast<double>(std::log(s0) - std::log(s1));
  }
  return llr;
}

double reference_spa_check(std::span<const double> others) {
  long double p = 1.0L;
  for (double v : others) p *= std::tanh(static_cast<long double>(v) / 2.0L);
  p = std::clamp(p, -static_cast<long double>(kClampL), static_cast<long double>(kClampL));
  return static_cast<double>(2.0L * std::atanh(p));
}

DecodeResult reference_turbo_equalize(const BranchMetrics& metrics, const LdpcCode& code,
                                      const Trellis& trellis, int iters, int inner_rounds) {
  const int n = code.n();
  std::vector<double> c2v(static_cast<std::size_t>(code.num_edges()), 0.0);
  std::vector<double> v2c(c2v.size(), 0.0);
  std::vector<double> prior(static_cast<std::size_t>(n), 0.0);
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  std::vector<double> others;
  DecodeResult result;
  for (int it = 1; it <= iters; ++it) {
    for (int i = 0; i < n; ++i) {
      prior[i] = 0.0;
      for (int e : code.var_edges(i)) prior[i] += c2v[e];
    }
    const auto post = reference_bcjr_llr(metrics, trellis, prior);
    std::vector<double> ext(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ext[i] = post[i] - prior[i];
    for (int r = 0; r < inner_rounds; ++r) {
      for (int i = 0; i < n; ++i) {
        double sum = ext[i];
        for (int e : code.var_edges(i)) sum += c2v[e];
        for (int e : code.var_edges(i)) v2c[e] = sum - c2v[e];
      }
      for (int j = 0; j < code.m(); ++j) {
        const int off = code.check_offset(j);
        const int d = code.check_degree(j);
        for (int k = 0; k < d; ++k) {
          others.clear();
          for (int q = 0; q < d; ++q) {
            if (q != k) others.push_back(v2c[off + q]);
          }
          c2v[off + k] = reference_spa_check(others);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      total[i] = ext[i];
      for (int e : code.var_edges(i)) total[i] += c2v[e];
    }
    result.bits = hard_decision(total);
    result.iterations = it;
    if (syndrome_ok(code, result.bits)) {
      result.status = DecodeStatus::parity_ok;
      break;
    }
  }
  result.soft = total;
  return result;
}

double dual_code_term(const MessageState& state, const LdpcCode& code, double k1) {
  double total = 0.0;
  std::vector<double> vals;
  for (int j = 0; j < code.m(); ++j) {
    const int d = code.check_degree(j);
    if (d - 1 > 15) {
      throw std::invalid_argument("check " + std::to_string(j) +
                                  " has too many configurations for dual evaluation");
    }
    const int off = code.check_offset(j);
    vals.clear();
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) % 2) continue;
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        if (mask >> k & 1) s += state.m[off + k];
      }
      vals.push_back(-k1 * s);
    }
    total -= log_sum_exp(vals) / k1;
  }
  return total;
}

double dual_trellis_term(const MessageState& state, const Trellis& trellis, double k2,
                         int p_index) {
  if (p_index < 0 || p_index >= state.n) throw std::invalid_argument("p_index out of range");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(state.o));
  for (int e = 0; e < state.o; ++e) {
    terms.push_back(state.alpha(p_index, trellis.from(e)) + state.lam(p_index, e) +
                    state.beta(p_index + 1, trellis.to(e)));
  }
  const double log_z =
      log_sum_exp(terms) + state.alpha_offset[p_index] + state.beta_offset[p_index + 1];
  return -log_z / k2;
}

double dual_objective(const MessageState& state, const LdpcCode& code, const Trellis& trellis,
                      const DecoderParams& params, int p_index) {
  return dual_code_term(state, code, params.k1) +
         dual_trellis_term(state, trellis, params.k2, p_index);
}

namespace {

// -(1/K2) ln Z from the cut between sections t-1 and t.
double trellis_term_at_cut(const MessageState& s, double k2, int t) {
  std::vector<double> terms;
  for (int k = 0; k < s.num_states; ++k) terms.push_back(s.alpha(t, k) + s.beta(t, k));
  return -(log_sum_exp(terms) + s.alpha_offset[t] + s.beta_offset[t]) / k2;
}

double residual_of(const MessageState& s, const LdpcCode& code, const Trellis& trellis,
                   double k1) {
  const auto g = trellis_marginals(s, trellis);
  double eps = 0.0;
  for (int i = 0; i < s.n; ++i) {
    double tau = 0.0;
    for (int e = 0; e < s.o; ++e) {
      if (trellis.input(e)) tau += g[static_cast<std::size_t>(i) * s.o + e];
    }
    for (int e : code.var_edges(i)) {
      const double lam = 1.0 / (1.0 + std::exp(k1 * (s.m[e] - s.big_m[e])));
      eps = std::max(eps, std::abs(lam - tau));
    }
  }
  return eps;
}

// One pass of exact block maximizations over p = 0..N-1. Needs beta current
// on entry; leaves alpha current and beta stale.
void cyclic_sweep(MessageState& s, const BranchMetrics& metrics, const LdpcCode& code,
                  const Trellis& trellis, const DecoderParams& params,
                  std::vector<double>* block_trace) {
  const double k1 = params.k1;
  const double k2 = params.k2;
  std::vector<double> others;
  std::vector<double> big;
  for (int p = 0; p < s.n; ++p) {
    auto lam_ext = [&](int e) { return -k2 * metrics(p, e); };
    const double gamma_ext = section_mass(s, trellis, p, 0, lam_ext) -
                             section_mass(s, trellis, p, 1, lam_ext);
    const auto& edges = code.var_edges(p);
    const int d = static_cast<int>(edges.size());
    big.resize(static_cast<std::size_t>(d));
    double sum_m = 0.0;
    for (int q = 0; q < d; ++q) {
      const int eid = edges[q];
      const int j = code.edge_check(eid);
      const int off = code.check_offset(j);
      others.clear();
      for (int r = 0; r < code.check_degree(j); ++r) {
        if (off + r != eid) others.push_back(s.m[off + r]);
      }
      big[q] = check_message(others, k1, params.big_arg_threshold);
      sum_m += big[q];
    }
    const double total = (sum_m + d * gamma_ext / k1) / (1.0 + d * k2 / k1);
    const double gamma_p = gamma_ext - k2 * total;
    for (int q = 0; q < d; ++q) {
      s.big_m[edges[q]] = big[q];
      s.m[edges[q]] = big[q] + gamma_p / k1;
    }
    s.gamma[p] = gamma_p;
    const double sm = message_sum(s, code, p);
    for (int e = 0; e < s.o; ++e) {
      s.lam(p, e) = -k2 * (metrics(p, e) - (trellis.input(e) ? sm : 0.0));
    }
    forward_pass(s, trellis, p, p + 1);
    if (block_trace) {
      block_trace->push_back(dual_code_term(s, code, k1) + trellis_term_at_cut(s, k2, p + 1));
    }
  }
}

}  // namespace

CyclicResult cyclic_decode(const BranchMetrics& metrics, const LdpcCode& code,
                           const Trellis& trellis, const DecoderParams& params,
                           const CyclicOptions& options) {
  params.validate();
  CyclicResult out;
  MessageState& s = out.state;
  s = MessageState::zeros(code, trellis);
  const double k1 = params.k1;
  const bool evaluable = dual_evaluable(code);
  bit_to_trellis(s, metrics, code, trellis, params);
  forward_backward(s, trellis);
  double prev = evaluable ? dual_objective(s, code, trellis, params, 0)
                          : std::numeric_limits<double>::quiet_NaN();

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    cyclic_sweep(s, metrics, code, trellis, params,
                 options.trace_blocks && evaluable ? &out.block_trace : nullptr);
    backward_pass(s, trellis);
    out.sweeps = sweep;
    compute_check_messages(s, code, params);
    out.residual = residual_of(s, code, trellis, k1);
    if (evaluable) {
      const double value = dual_objective(s, code, trellis, params, 0);
      out.sweep_trace.push_back(value);
      if (std::abs(value - prev) < options.eps_stop) {
        out.converged = true;
        break;
      }
      prev = value;
    }
    if (out.residual <= options.residual_stop) {
      out.converged = true;
      break;
    }
  }
  trellis_to_bit(s, trellis);
  out.bits = hard_decision(s.gamma);
  return out;
}

NValues soft_n_values(const MessageState& state, double k2) {
  NValues out;
  const std::size_t nodes = state.log_alpha.size();
  out.fwd.resize(nodes);
  out.bwd.resize(nodes);
  for (int t = 0; t <= state.n; ++t) {
    for (int k = 0; k < state.num_states; ++k) {
      const std::size_t idx = static_cast<std::size_t>(t) * state.num_states + k;
      out.fwd[idx] = (state.log_alpha[idx] + state.alpha_offset[t]) / k2;
      out.bwd[idx] = -(state.log_beta[idx] + state.beta_offset[t]) / k2;
    }
  }
  return out;
}

std::vector<double> trellis_marginals(const MessageState& state, const Trellis& trellis) {
  std::vector<double> g(static_cast<std::size_t>(state.n) * state.o);
  std::vector<double> terms(static_cast<std::size_t>(state.o));
  for (int t = 0; t < state.n; ++t) {
    for (int e = 0; e < state.o; ++e) {
      terms[e] = state.alpha(t, trellis.from(e)) + state.lam(t, e) +
                 state.beta(t + 1, trellis.to(e));
    }
    const double z = log_sum_exp(terms);
    for (int e = 0; e < state.o; ++e) {
      g[static_cast<std::size_t>(t) * state.o + e] = std::exp(terms[e] - z);
    }
  }
  return g;
}

}  // namespace jlp
