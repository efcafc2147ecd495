#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "jlp/channel.hpp"
#include "jlp/ijlp.hpp"
#include "jlp/ldpc.hpp"
#include "jlp/lpexact.hpp"
#include "jlp/metrics.hpp"

namespace jlp {

/// f_i = sum of g_{i,e} over edges with x(e) = 1.
std::vector<double> project_symbolwise(std::span<const double> g, const Trellis& trellis);
/// p_i = sum of g_{i,e} a(e).
std::vector<double> project_signal_space(std::span<const double> g, const Trellis& trellis);

enum class PcwKind { codeword, pseudo_codeword };  // TCW vs JD-TPCW
PcwKind classify(std::span<const double> g, double tol = kLpIntegralityTol);
const char* to_string(PcwKind kind);

/// (|d|^2 + sigma_p^2)^2 / |d|^2 with d = c - p and
/// sigma_p^2 = sum_i sum_e g a^2 - sum_i p_i^2. Throws if |d|^2 == 0.
double d_gen_squared(std::span<const double> c, std::span<const double> g,
                     const Trellis& trellis);
double d_gen(std::span<const double> c, std::span<const double> g, const Trellis& trellis);

/// Standard normal upper tail.
double q_function(double x);
/// Q(d / (2 sigma)).
double pairwise_error_prob(double d, double sigma);

/// Harvested generalized-distance spectrum relative to one transmitted word.
struct SpectrumEntry {
  double d_gen = 0.0;
  long multiplicity = 0;
  std::vector<double> example_f;
};

struct DistanceSpectrum {
  BitVector reference;            // transmitted codeword
  std::vector<double> signal;     // its noiseless output c
  bool approximate = false;       // competitors reconstructed from iterative messages
  std::map<long, SpectrumEntry> entries;  // key: d_gen quantized to 1e-4
  std::set<std::string> seen;     // dedupe keys of recorded competitors

  static long quantize(double d) { return static_cast<long>(std::llround(d * 1e4)); }

  /// Records a competitor flow; returns true if it was new.
  bool add(std::span<const double> g, const Trellis& trellis);
  std::vector<double> distances() const;
  long total_multiplicity() const;
};

/// sum_d K_d Q(d / 2 sigma); zero for an empty spectrum.
double union_bound(const DistanceSpectrum& spectrum, double sigma);

std::string format_spectrum(const DistanceSpectrum& spectrum);
DistanceSpectrum parse_spectrum(const std::string& text);
void save_spectrum(const DistanceSpectrum& spectrum, const std::filesystem::path& path);
DistanceSpectrum load_spectrum(const std::filesystem::path& path);

struct GapBound {
  double code_term = 0.0;     // (1 - R + Nbar) ln2 / K1
  double trellis_term = 0.0;  // ln O / (K2 N)
  double eps_term = 0.0;      // eps (3/N sum|b| + C)
  double c_const = 0.0;
  double delta = 0.0;
};

GapBound gap_delta(const LdpcCode& code, const Trellis& trellis, double k1, double k2,
                   double eps = 0.0, double sum_abs_b = 0.0, double c_const = 0.0);

/// -sum x ln x with 0 ln 0 = 0.
double entropy(std::span<const double> x);

struct PrimalFromDual {
  std::vector<double> g;               // N x O, feasible flows
  std::vector<std::vector<double>> w;  // per check configuration weights
  double value = 0.0;                  // sum b g
  double ps_value = 0.0;               // value minus the entropy terms
  double eps = 0.0;
  double c_const = 0.0;                // sum |m| / N
  double sum_abs_b = 0.0;
};

class ConstructionRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Feasible primal point built from a dual message state. Refuses eps > 1/6.
PrimalFromDual primal_from_dual(const MessageState& messages, const BranchMetrics& metrics,
                                const LdpcCode& code, const Trellis& trellis,
                                const DecoderParams& params);

/// Largest violation of the local codeword polytope inequalities (including
/// 0 <= f <= 1) over all checks.
double lcp_violation(std::span<const double> f, const LdpcCode& code);

/// Residual of all Problem-P rows for (g, w).
double problem_p_residual(std::span<const double> g, const std::vector<std::vector<double>>& w,
                          const LdpcCode& code, const Trellis& trellis, int p_index = 0);

}  // namespace jlp
