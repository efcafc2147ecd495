#include "jlp/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "jlp/lpexact.hpp"
#include "jlp/metrics.hpp"
#include "jlp/util.hpp"

namespace jlp {

DecoderKind decoder_from_name(const std::string& name) {
  if (name == "ijlp") return DecoderKind::ijlp;
  if (name == "te") return DecoderKind::te;
  if (name == "te-ref") return DecoderKind::te_ref;
  if (name == "exact-lp") return DecoderKind::exact_lp;
  throw std::invalid_argument("unknown decoder '" + name + "' (expected ijlp|te|te-ref|exact-lp)");
}

std::string decoder_name(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::ijlp: return "ijlp";
    case DecoderKind::te: return "te";
    case DecoderKind::te_ref: return "te-ref";
    case DecoderKind::exact_lp: return "exact-lp";
  }
  return "?";
}

Experiment resolve_experiment(const ExperimentConfig& config) {
  FscSpec spec = channel_by_name(config.channel);
  auto code = [&]() -> LdpcCode {
    if (config.code_source == "random") {
      return random_regular(config.n, config.dv, config.dc, config.code_seed,
                            config.allow_four_cycles);
    }
    if (config.code_source == "spc") return spc(config.n);
    if (config.code_source == "alist") return load_alist(config.alist_path);
    throw std::invalid_argument("unknown code source '" + config.code_source + "'");
  }();
  BitVector word;
  if (config.codeword == "zero") {
    word.assign(static_cast<std::size_t>(code.n()), 0);
  } else if (config.codeword == "random") {
    word = random_codeword(code, config.codeword_seed);
  } else {
    for (char ch : config.codeword) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("codeword must be zero|random|bit string");
      word.push_back(static_cast<Bit>(ch - '0'));
    }
    if (static_cast<int>(word.size()) != code.n()) {
      throw std::invalid_argument("codeword length does not match code length");
    }
    if (!syndrome_ok(code, word)) throw std::invalid_argument("given word is not a codeword");
  }
  return Experiment{std::move(spec), std::move(code), std::move(word)};
}

std::pair<double, double> wilson_interval(long errors, long trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {errors == 0 ? 0.0 : std::max(0.0, center - half),
          errors == trials ? 1.0 : std::min(1.0, center + half)};
}

namespace {

bool use_scaled(const ExperimentConfig& config) {
  switch (config.metric_scale) {
    case MetricScale::scaled: return true;
    case MetricScale::unscaled: return false;
    case MetricScale::automatic:
      return config.decoder == DecoderKind::te || config.decoder == DecoderKind::te_ref;
  }
  return false;
}

int worker_count(const ExperimentConfig& config) {
  if (config.workers > 0) return config.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs trials [begin, end) in parallel; results indexed by trial - begin.
std::vector<TrialOutcome> run_batch(const ExperimentConfig& config, const Experiment& exp,
                                    double sigma, std::size_t snr_index, long begin, long end,
                                    bool keep) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(end - begin));
  std::atomic<long> next{begin};
  auto work = [&]() {
    while (true) {
      const long t = next.fetch_add(1);
      if (t >= end) break;
      out[static_cast<std::size_t>(t - begin)] = run_trial(config, exp, sigma, snr_index, t, keep);
    }
  };
  const int workers = std::min<long>(worker_count(config), end - begin);
  if (workers <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

constexpr long kBatch = 512;

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& config, const Experiment& exp, double sigma,
                       std::size_t snr_index, long trial, bool keep_competitor) {
  std::mt19937_64 rng(mix_seed(config.seed, snr_index, static_cast<std::uint64_t>(trial)));
  const auto tx = simulate(exp.spec, exp.codeword, sigma, config.start_state, rng);
  const Trellis trellis(exp.spec, exp.code.n());
  const double scale_sigma = use_scaled(config) ? sigma : 0.0;
  const auto metrics = awgn_metrics(trellis, tx.y, config.include_p0, scale_sigma);

  TrialOutcome out;
  try {
    switch (config.decoder) {
      case DecoderKind::ijlp: {
        const auto r = decode(metrics, exp.code, trellis, config.params);
        out.error = r.bits != exp.codeword;
        out.iterations = r.iterations;
        break;
      }
      case DecoderKind::te: {
        const auto r = turbo_equalize(metrics, exp.code, trellis, config.params.outer_max,
                                      config.params.inner_rounds);
        out.error = r.bits != exp.codeword;
        out.iterations = r.iterations;
        break;
      }
      case DecoderKind::te_ref: {
        const auto r = reference_turbo_equalize(metrics, exp.code, trellis,
                                                config.params.outer_max,
                                                config.params.inner_rounds);
        out.error = r.bits != exp.codeword;
        out.iterations = r.iterations;
        break;
      }
      case DecoderKind::exact_lp: {
        const auto problem = build_problem_p(trellis, exp.code, metrics, 0);
        const auto sol = simplex_solve(problem);
        out.iterations = 1;
        if (sol.kind == VertexKind::fractional) {
          out.error = true;
        } else {
          const auto f = project_symbolwise(sol.g, trellis);
          for (std::size_t i = 0; i < f.size(); ++i) {
            if ((f[i] > 0.5 ? 1 : 0) != exp.codeword[i]) {
              out.error = true;
              break;
            }
          }
        }
        if (out.error && keep_competitor) out.competitor = sol.g;
        break;
      }
    }
  } catch (const NumericalAbort&) {
    out.aborted = true;
    out.error = true;
  }
  return out;
}

std::vector<WerRow> wer_sweep(const ExperimentConfig& config, const Experiment& exp) {
  if (config.snr_db.empty()) throw std::invalid_argument("empty SNR grid");
  if (config.max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
  const double power = output_power(exp.spec);
  const auto start = std::chrono::steady_clock::now();
  std::vector<WerRow> rows;
  for (std::size_t s = 0; s < config.snr_db.size(); ++s) {
    WerRow row;
    row.snr_db = config.snr_db[s];
    row.sigma = sigma_from_snr_db(power, row.snr_db);
    long iter_sum = 0;
    bool done = false;
    for (long begin = 0; begin < config.max_trials && !done; begin += kBatch) {
      const long end = std::min(config.max_trials, begin + kBatch);
      const auto outcomes = run_batch(config, exp, row.sigma, s, begin, end, false);
      for (const auto& o : outcomes) {
        ++row.trials;
        iter_sum += o.iterations;
        if (o.error) ++row.errors;
        if (o.aborted) ++row.aborts;
        if (row.errors >= config.max_errors) {
          done = true;
          break;
        }
      }
      if (config.max_seconds > 0.0) {
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        if (el.count() > config.max_seconds) done = true;
      }
    }
    row.wer = static_cast<double>(row.errors) / row.trials;
    std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.errors, row.trials);
    row.mean_iters = static_cast<double>(iter_sum) / row.trials;
    rows.push_back(row);
  }
  return rows;
}

std::vector<WerRow> wer_sweep(const ExperimentConfig& config) {
  return wer_sweep(config, resolve_experiment(config));
}

std::string format_wer_csv(const std::vector<WerRow>& rows) {
  std::ostringstream os;
  os << "snr_db,sigma,trials,errors,wer,ci_lo,ci_hi,mean_iters\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.snr_db << ',' << r.sigma << ',' << r.trials << ',' << r.errors << ',' << r.wer << ','
       << r.ci_lo << ',' << r.ci_hi << ',' << r.mean_iters << '\n';
  }
  return os.str();
}

std::vector<double> noiseless_signal(const FscSpec& spec, const BitVector& bits, State start) {
  std::mt19937_64 rng(0);
  return simulate(spec, bits, 0.0, start, rng).y;
}

DistanceSpectrum harvest_pcws(const ExperimentConfig& config, const Experiment& exp,
                              const HarvestOptions& options, HarvestStats* stats) {
  if (config.decoder != DecoderKind::exact_lp) {
    throw std::invalid_argument("harvesting requires the exact-lp decoder");
  }
  ExperimentConfig cfg = config;
  if (!cfg.start_state) cfg.start_state = 0;
  const Trellis trellis(exp.spec, exp.code.n());
  DistanceSpectrum spectrum;
  spectrum.reference = exp.codeword;
  spectrum.signal = noiseless_signal(exp.spec, exp.codeword, *cfg.start_state);

  const double sigma = sigma_from_snr_db(output_power(exp.spec), options.snr_db);
  HarvestStats st;
  if (sigma <= 0.0) {
    if (stats) *stats = st;
    return spectrum;
  }
  long quiet = 0;
  for (long begin = 0; begin < options.max_trials; begin += kBatch) {
    const long end = std::min(options.max_trials, begin + kBatch);
    const auto outcomes = run_batch(cfg, exp, sigma, 0, begin, end, true);
    for (const auto& o : outcomes) {
      ++st.trials;
      if (!o.error) continue;
      ++st.errors;
      bool reset = false;
      if (!o.competitor.empty()) {
        double d = 0.0;
        bool defined = true;
        try {
          d = d_gen(spectrum.signal, o.competitor, trellis);
        } catch (const std::domain_error&) {
          defined = false;
        }
        if (defined) {
          const long key = DistanceSpectrum::quantize(d);
          if (!spectrum.entries.count(key)) {
            const auto ds = spectrum.entries;
            long threshold = std::numeric_limits<long>::max();
            if (static_cast<int>(ds.size()) >= options.smallest) {
              auto it = ds.begin();
              std::advance(it, options.smallest - 1);
              threshold = it->first;
            }
            reset = key < threshold;
          }
          spectrum.add(o.competitor, trellis);
        }
      }
      quiet = reset ? 0 : quiet + 1;
      if (quiet >= options.stationary_window) {
        st.stationary = true;
        break;
      }
      if (st.errors >= options.max_errors) break;
    }
    if (st.stationary || st.errors >= options.max_errors) break;
  }
  if (stats) *stats = st;
  return spectrum;
}

std::vector<PredictedRow> predict_wer(const DistanceSpectrum& spectrum,
                                      const std::vector<double>& snr_db, double power) {
  std::vector<PredictedRow> rows;
  for (double snr : snr_db) {
    PredictedRow r;
    r.snr_db = snr;
    r.sigma = sigma_from_snr_db(power, snr);
    r.wer = r.sigma > 0.0 ? union_bound(spectrum, r.sigma) : 0.0;
    rows.push_back(r);
  }
  return rows;
}

std::string format_prediction_csv(const std::vector<PredictedRow>& rows) {
  std::ostringstream os;
  os << "snr_db,sigma,predicted_wer\n" << std::setprecision(10);
  for (const auto& r : rows) os << r.snr_db << ',' << r.sigma << ',' << r.wer << '\n';
  return os.str();
}

}  // namespace jlp
