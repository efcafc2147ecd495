#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jlp/analysis.hpp"
#include "jlp/channel.hpp"
#include "jlp/ijlp.hpp"
#include "jlp/ldpc.hpp"

namespace jlp {

enum class DecoderKind { ijlp, te, te_ref, exact_lp };
DecoderKind decoder_from_name(const std::string& name);
std::string decoder_name(DecoderKind kind);

enum class MetricScale { automatic, unscaled, scaled };

struct ExperimentConfig {
  std::string channel = "pdic";
  std::string code_source = "random";  // random | spc | alist
  int n = 155;
  int dv = 3;
  int dc = 5;
  std::uint64_t code_seed = 1;
  bool allow_four_cycles = false;
  std::string alist_path;
  std::string codeword = "random";  // zero | random | explicit bit string
  std::uint64_t codeword_seed = 7;
  std::optional<int> start_state;  // transmitter start state; sampled from P0 if unset
  bool include_p0 = false;
  DecoderKind decoder = DecoderKind::ijlp;
  DecoderParams params;
  MetricScale metric_scale = MetricScale::automatic;
  std::vector<double> snr_db;
  long max_trials = 100000;
  long max_errors = 100;
  double max_seconds = 0.0;  // 0 = unlimited; checked between batches
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = hardware concurrency
};

/// Code, channel and transmitted word resolved from a config.
struct Experiment {
  FscSpec spec;
  LdpcCode code;
  BitVector codeword;
};

Experiment resolve_experiment(const ExperimentConfig& config);

struct WerRow {
  double snr_db = 0.0;
  double sigma = 0.0;
  long trials = 0;
  long errors = 0;
  long aborts = 0;
  double wer = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double mean_iters = 0.0;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(long errors, long trials);

struct TrialOutcome {
  bool error = false;
  bool aborted = false;
  int iterations = 0;
  std::vector<double> competitor;  // exact-LP flows when the trial erred
};

/// One Monte Carlo trial, fully determined by (seed, snr index, trial index).
TrialOutcome run_trial(const ExperimentConfig& config, const Experiment& exp, double sigma,
                       std::size_t snr_index, long trial, bool keep_competitor = false);

std::vector<WerRow> wer_sweep(const ExperimentConfig& config, const Experiment& exp);
std::vector<WerRow> wer_sweep(const ExperimentConfig& config);

std::string format_wer_csv(const std::vector<WerRow>& rows);

struct HarvestOptions {
  double snr_db = 0.0;
  long stationary_window = 10000;  // consecutive errors without a new small distance
  int smallest = 5;
  long max_errors = 1000000;
  long max_trials = 10000000;
};

struct HarvestStats {
  long trials = 0;
  long errors = 0;
  bool stationary = false;
};

/// Collects exact-LP error events at low SNR into a distance spectrum.
DistanceSpectrum harvest_pcws(const ExperimentConfig& config, const Experiment& exp,
                              const HarvestOptions& options, HarvestStats* stats = nullptr);

struct PredictedRow {
  double snr_db = 0.0;
  double sigma = 0.0;
  double wer = 0.0;
};

std::vector<PredictedRow> predict_wer(const DistanceSpectrum& spectrum,
                                      const std::vector<double>& snr_db, double power);
std::string format_prediction_csv(const std::vector<PredictedRow>& rows);

/// Noiseless output of `bits` from `start`.
std::vector<double> noiseless_signal(const FscSpec& spec, const BitVector& bits, State start);

}  // namespace jlp
