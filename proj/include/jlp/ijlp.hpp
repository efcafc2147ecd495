#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "jlp/channel.hpp"
#include "jlp/ldpc.hpp"
#include "jlp/metrics.hpp"

namespace jlp {

enum class Schedule { simultaneous, cyclic };

struct DecoderParams {
  double k1 = 1000.0;
  double k2 = 100.0;
  int inner_rounds = 2;
  int outer_max = 100;
  Schedule schedule = Schedule::simultaneous;
  double big_arg_threshold = 35.0;

  void validate() const;
};

/// Iterative decoder state. Tanner-graph quantities (m, M) are indexed by
/// edge id of the LdpcCode; trellis quantities are log-domain.
struct MessageState {
  int n = 0;
  int num_states = 0;
  int o = 0;

  std::vector<double> m;      // bit-to-check m_{i,j}
  std::vector<double> big_m;  // check-to-bit M_{i,j}
  std::vector<double> gamma;  // trellis-to-bit gamma_i

  std::vector<double> log_lambda;  // N x O
  std::vector<double> log_alpha;   // (N+1) x S, normalized
  std::vector<double> log_beta;    // (N+1) x S, normalized
  // ln A_t(k) = log_alpha(t,k) + alpha_offset[t], where A is the
  // unnormalized forward sum started from A_0 = 1; same for beta with B_N = 1.
  std::vector<double> alpha_offset;
  std::vector<double> beta_offset;

  static MessageState zeros(const LdpcCode& code, const Trellis& trellis);

  double& lam(int i, int e) { return log_lambda[static_cast<std::size_t>(i) * o + e]; }
  double lam(int i, int e) const { return log_lambda[static_cast<std::size_t>(i) * o + e]; }
  double& alpha(int t, int k) { return log_alpha[static_cast<std::size_t>(t) * num_states + k]; }
  double alpha(int t, int k) const { return log_alpha[static_cast<std::size_t>(t) * num_states + k]; }
  double& beta(int t, int k) { return log_beta[static_cast<std::size_t>(t) * num_states + k]; }
  double beta(int t, int k) const { return log_beta[static_cast<std::size_t>(t) * num_states + k]; }
};

/// Sum of m over the checks of bit i.
double message_sum(const MessageState& state, const LdpcCode& code, int i);

/// lambda_bar_{i,e} = -K2 (b_{i,e} - [x(e)=1] sum_j m_{i,j}).
void bit_to_trellis(MessageState& state, const BranchMetrics& metrics, const LdpcCode& code,
                    const Trellis& trellis, const DecoderParams& params);
/// Normalized forward/backward recursions in the log domain.
void forward_backward(MessageState& state, const Trellis& trellis);
/// gamma_i = ln(sum_{x=0} alpha lambda beta / sum_{x=1} alpha lambda beta).
void trellis_to_bit(MessageState& state, const Trellis& trellis);
double trellis_llr(const MessageState& state, const Trellis& trellis, int i);

/// Check-to-bit value from the other incoming messages of one check.
double check_message(std::span<const double> others, double k1, double big_arg_threshold);
/// Same value without the large-argument branch.
double check_message_naive(std::span<const double> others, double k1);
double check_message_stable(std::span<const double> others, double k1);
/// Same value with 1 - |l| accumulated directly, so it keeps full relative
/// precision when |l| is close to 1.
double check_message_accurate(std::span<const double> others, double k1);

/// One inner round: M from the current m for every check, then m = M + gamma/K1.
void check_update(MessageState& state, const LdpcCode& code, const DecoderParams& params);
/// M only.
void compute_check_messages(MessageState& state, const LdpcCode& code,
                            const DecoderParams& params);

enum class DecodeStatus { parity_ok, max_iter };

struct DecodeResult {
  BitVector bits;
  DecodeStatus status = DecodeStatus::max_iter;
  std::vector<double> soft;
  int iterations = 0;
};

struct TraceRecord {
  int iteration = 0;
  double dual_objective = 0.0;  // NaN when not evaluated
  int syndrome_weight = 0;
  std::uint64_t gamma_hash = 0;
};
using TraceSink = std::function<void(const TraceRecord&)>;

std::uint64_t hash_vector(std::span<const double> v);

DecodeResult decode(const BranchMetrics& metrics, const LdpcCode& code, const Trellis& trellis,
                    const DecoderParams& params, const TraceSink& trace = {},
                    MessageState* final_state = nullptr);

/// decode with K1 = K2 = 1.
DecodeResult turbo_equalize(const BranchMetrics& metrics, const LdpcCode& code,
                            const Trellis& trellis, int iters, int inner_rounds = 2,
                            MessageState* final_state = nullptr);

/// Textbook BCJR + sum-product turbo equalizer on LLRs ln(P0/P1), treating
/// b as the negative channel log-likelihood.
DecodeResult reference_turbo_equalize(const BranchMetrics& metrics, const LdpcCode& code,
                                      const Trellis& trellis, int iters, int inner_rounds = 2);

/// Posterior LLRs ln(P(x_i=0)/P(x_i=1)) of a plain BCJR with channel cost b,
/// a-priori LLRs, alpha_0 = beta_N uniform. Linear domain with rescaling.
std::vector<double> reference_bcjr_llr(const BranchMetrics& metrics, const Trellis& trellis,
                                       std::span<const double> prior_llr);
/// 2 atanh(prod tanh(L/2)).
double reference_spa_check(std::span<const double> others);

struct CyclicOptions {
  double eps_stop = 1e-9;
  double residual_stop = 1e-12;
  int max_sweeps = 20000;
  bool trace_blocks = false;  // dual objective after every block (small codes only)
};

struct CyclicResult {
  MessageState state;
  std::vector<double> sweep_trace;  // dual objective after each sweep
  std::vector<double> block_trace;  // when trace_blocks
  int sweeps = 0;
  bool converged = false;
  double residual = 0.0;
  BitVector bits;
};

/// Block coordinate ascent on the softened dual, one bit at a time.
CyclicResult cyclic_decode(const BranchMetrics& metrics, const LdpcCode& code,
                           const Trellis& trellis, const DecoderParams& params,
                           const CyclicOptions& options = {});

/// -(1/K1) sum_j ln sum_{B even} e^{-K1 sum_B m}. Refuses checks with more
/// than 2^15 configurations.
double dual_code_term(const MessageState& state, const LdpcCode& code, double k1);
/// -(1/K2) ln sum_{e in T_p} e^{-K2 (Gamma - n_fwd + n_bwd)}; needs alpha_{p}
/// and beta_{p+1} consistent with lambda (0-based section p).
double dual_trellis_term(const MessageState& state, const Trellis& trellis, double k2,
                         int p_index);
double dual_objective(const MessageState& state, const LdpcCode& code, const Trellis& trellis,
                      const DecoderParams& params, int p_index = 0);

/// Recomputes lambda, alpha, beta, gamma and M from m.
void refresh_from_messages(MessageState& state, const BranchMetrics& metrics,
                           const LdpcCode& code, const Trellis& trellis,
                           const DecoderParams& params);

/// Soft recursion values recovered from the normalized state:
/// n_fwd(t,k) = ln A_t(k) / K2 and n_bwd(t,k) = -ln B_t(k) / K2.
struct NValues {
  std::vector<double> fwd;  // (N+1) x S
  std::vector<double> bwd;  // (N+1) x S
};
NValues soft_n_values(const MessageState& state, double k2);

/// Edge marginals of the trellis distribution proportional to alpha lambda beta.
std::vector<double> trellis_marginals(const MessageState& state, const Trellis& trellis);

}  // namespace jlp
