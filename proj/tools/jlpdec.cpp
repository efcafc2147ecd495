#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "jlp/config.hpp"
#include "jlp/lpexact.hpp"
#include "jlp/sim.hpp"
#include "jlp/util.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::string output;
  std::string snr;
  std::string decoder;
  std::string channel;
  long seed = -1;
  int workers = -1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "key = value configuration file");
  cmd->add_option("--set", c.sets, "override a config key (key=value), repeatable");
  cmd->add_option("-o,--output", c.output, "output file");
  cmd->add_option("--snr", c.snr, "comma-separated SNR list in dB");
  cmd->add_option("--decoder", c.decoder, "ijlp | te | te-ref | exact-lp");
  cmd->add_option("--channel", c.channel, "dic | pdic | pr2");
  cmd->add_option("--seed", c.seed, "simulation seed");
  cmd->add_option("--workers", c.workers, "worker threads (0 = all cores)");
}

jlp::RunConfig load_config(const Common& c) {
  jlp::KeyValues kv;
  if (!c.config_path.empty()) kv = jlp::parse_key_values(jlp::read_file(c.config_path));
  std::vector<std::string> problems;
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      problems.push_back("--set " + s + ": expected key=value");
      continue;
    }
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  if (!problems.empty()) throw jlp::ConfigError(problems);
  if (!c.output.empty()) kv["output"] = c.output;
  if (!c.snr.empty()) kv["snr_db"] = c.snr;
  if (!c.decoder.empty()) kv["decoder"] = c.decoder;
  if (!c.channel.empty()) kv["channel"] = c.channel;
  if (c.seed >= 0) kv["seed"] = std::to_string(c.seed);
  if (c.workers >= 0) kv["workers"] = std::to_string(c.workers);
  return jlp::build_run_config(kv);
}

void write_manifest(const std::string& command, const jlp::RunConfig& rc, const std::string& started,
                    const std::vector<std::string>& outputs, json extra = json::object()) {
  if (outputs.empty()) return;
  json m;
  m["tool"] = "jlpdec";
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = jlp::describe(rc);
  m["seed"] = rc.experiment.seed;
  m["started"] = started;
  m["finished"] = timestamp();
  m["outputs"] = outputs;
  if (!extra.empty()) m["results"] = std::move(extra);
  jlp::write_file_atomic(outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    jlp::write_file_atomic(path, text);
  }
}

std::vector<double> read_vector(const std::string& path) {
  const std::string text = jlp::read_file(path);
  std::vector<double> y;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    for (char& ch : tok) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream parts(tok);
    std::string item;
    while (parts >> item) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("trailing");
        y.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": value " + std::to_string(y.size() + 1) + " is not a number: '" +
                                 item + "'");
      }
    }
  }
  return y;
}

int cmd_decode(const Common& c, const std::string& input, double sigma) {
  const auto started = timestamp();
  const auto rc = load_config(c);
  const auto exp = jlp::resolve_experiment(rc.experiment);
  const auto y = read_vector(input);
  if (static_cast<int>(y.size()) != exp.code.n()) {
    throw std::runtime_error(input + ": expected " + std::to_string(exp.code.n()) + " values, got " +
                             std::to_string(y.size()));
  }
  const jlp::Trellis trellis(exp.spec, exp.code.n());
  const auto& ex = rc.experiment;
  bool scaled = ex.metric_scale == jlp::MetricScale::scaled ||
                (ex.metric_scale == jlp::MetricScale::automatic &&
                 (ex.decoder == jlp::DecoderKind::te || ex.decoder == jlp::DecoderKind::te_ref));
  const auto metrics = jlp::awgn_metrics(trellis, y, ex.include_p0, scaled ? sigma : 0.0);

  json out;
  out["decoder"] = jlp::decoder_name(ex.decoder);
  std::vector<int> bits;
  jlp::DecodeResult r;
  switch (ex.decoder) {
    case jlp::DecoderKind::ijlp: r = jlp::decode(metrics, exp.code, trellis, ex.params); break;
    case jlp::DecoderKind::te:
      r = jlp::turbo_equalize(metrics, exp.code, trellis, ex.params.outer_max, ex.params.inner_rounds);
      break;
    case jlp::DecoderKind::te_ref:
      r = jlp::reference_turbo_equalize(metrics, exp.code, trellis, ex.params.outer_max,
                                        ex.params.inner_rounds);
      break;
    case jlp::DecoderKind::exact_lp: {
      const auto sol = jlp::simplex_solve(jlp::build_problem_p(trellis, exp.code, metrics, 0));
      const auto f = jlp::project_symbolwise(sol.g, trellis);
      for (double v : f) bits.push_back(v > 0.5 ? 1 : 0);
      out["vertex_kind"] = sol.kind == jlp::VertexKind::integral ? "integral" : "fractional";
      out["objective"] = sol.objective;
      out["f"] = f;
      out["status"] = sol.kind == jlp::VertexKind::integral ? "ml_certificate" : "failure";
      break;
    }
  }
  if (ex.decoder != jlp::DecoderKind::exact_lp) {
    bits.assign(r.bits.begin(), r.bits.end());
    out["status"] = r.status == jlp::DecodeStatus::parity_ok ? "parity_ok" : "max_iter";
    out["iterations"] = r.iterations;
  }
  std::string word;
  for (int b : bits) word += static_cast<char>('0' + b);
  out["bits"] = word;
  emit(rc.output, out.dump() + "\n");
  if (!rc.output.empty() && rc.output != "-") write_manifest("decode", rc, started, {rc.output});
  return 0;
}

int cmd_sweep(const Common& c) {
  const auto started = timestamp();
  const auto rc = load_config(c);
  if (rc.experiment.snr_db.empty()) throw jlp::ConfigError({"snr_db: required for sweep"});
  const auto exp = jlp::resolve_experiment(rc.experiment);
  const auto rows = jlp::wer_sweep(rc.experiment, exp);
  emit(rc.output, jlp::format_wer_csv(rows));
  long aborts = 0;
  for (const auto& r : rows) aborts += r.aborts;
  if (!rc.output.empty() && rc.output != "-") {
    write_manifest("sweep", rc, started, {rc.output}, json{{"aborts", aborts}});
  }
  if (aborts > 0) {
    std::cerr << "jlpdec: " << aborts << " trial(s) hit a numerical abort\n";
    return 2;
  }
  return 0;
}

int cmd_harvest(const Common& c) {
  const auto started = timestamp();
  auto rc = load_config(c);
  rc.experiment.decoder = jlp::DecoderKind::exact_lp;
  const auto exp = jlp::resolve_experiment(rc.experiment);
  jlp::HarvestStats stats;
  const auto spectrum = jlp::harvest_pcws(rc.experiment, exp, rc.harvest, &stats);
  emit(rc.output, jlp::format_spectrum(spectrum));
  std::cerr << "harvest: " << stats.trials << " trials, " << stats.errors << " errors, "
            << spectrum.entries.size() << " distances" << (stats.stationary ? " (stationary)" : "")
            << "\n";
  if (!rc.output.empty() && rc.output != "-") {
    write_manifest("harvest", rc, started, {rc.output},
                   json{{"trials", stats.trials}, {"errors", stats.errors}, {"stationary", stats.stationary}});
  }
  return 0;
}

int cmd_predict(const Common& c, const std::string& spectrum_path) {
  const auto started = timestamp();
  const auto rc = load_config(c);
  const std::string path = spectrum_path.empty() ? rc.spectrum : spectrum_path;
  if (path.empty()) throw jlp::ConfigError({"spectrum: required for predict"});
  if (rc.experiment.snr_db.empty()) throw jlp::ConfigError({"snr_db: required for predict"});
  const auto spectrum = jlp::load_spectrum(path);
  const double power = jlp::output_power(jlp::channel_by_name(rc.experiment.channel));
  const auto rows = jlp::predict_wer(spectrum, rc.experiment.snr_db, power);
  emit(rc.output, jlp::format_prediction_csv(rows));
  if (!rc.output.empty() && rc.output != "-") write_manifest("predict", rc, started, {rc.output});
  return 0;
}

int cmd_gap(const Common& c) {
  const auto rc = load_config(c);
  const auto exp = jlp::resolve_experiment(rc.experiment);
  const jlp::Trellis trellis(exp.spec, exp.code.n());
  const auto g = jlp::gap_delta(exp.code, trellis, rc.experiment.params.k1, rc.experiment.params.k2);
  std::ostringstream os;
  os << std::setprecision(6);
  os << "N = " << exp.code.n() << ", M = " << exp.code.m() << ", R = " << exp.code.rate()
     << ", Nbar = " << exp.code.avg_check_degree_per_bit() << ", O = " << trellis.num_edges() << "\n";
  os << "K1 = " << rc.experiment.params.k1 << ", K2 = " << rc.experiment.params.k2 << "\n";
  os << "code term    = " << g.code_term << "\n";
  os << "trellis term = " << g.trellis_term << "\n";
  os << "delta        = " << g.delta << "\n";
  os << "delta * N    = " << g.delta * exp.code.n() << "\n";
  emit(rc.output, os.str());
  return 0;
}

int cmd_codegen(int n, int dv, int dc, std::uint64_t seed, bool four_cycles, const std::string& output) {
  const auto started = timestamp();
  const auto code = jlp::random_regular(n, dv, dc, seed, four_cycles);
  emit(output, jlp::format_alist(code));
  if (!output.empty() && output != "-") {
    jlp::RunConfig rc;
    rc.experiment.n = n;
    rc.experiment.dv = dv;
    rc.experiment.dc = dc;
    rc.experiment.code_seed = seed;
    rc.experiment.allow_four_cycles = four_cycles;
    rc.output = output;
    write_manifest("codegen", rc, started, {output}, json{{"girth", jlp::girth(code)}});
  }
  return 0;
}

int cmd_channels() {
  for (const auto& name : jlp::channel_names()) {
    const auto spec = jlp::channel_by_name(name);
    std::cout << name << ": states=" << spec.num_states() << " edges=" << spec.edges().size()
              << " power=" << jlp::output_power(spec) << "\n";
    for (const auto& e : spec.edges()) {
      std::cout << "  s=" << e.from << " x=" << static_cast<int>(e.input) << " -> s'=" << e.to
                << " a=" << e.output << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint LP decoding of LDPC codes on finite-state channels"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common decode_opts, sweep_opts, harvest_opts, predict_opts, gap_opts;
  std::string input;
  double sigma = 0.0;
  auto* decode_cmd = app.add_subcommand("decode", "decode one received vector");
  add_common(decode_cmd, decode_opts);
  decode_cmd->add_option("input", input, "file of received samples")->required();
  decode_cmd->add_option("--sigma", sigma, "noise std used to scale metrics for te decoders");

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo WER sweep to CSV");
  add_common(sweep_cmd, sweep_opts);

  auto* harvest_cmd = app.add_subcommand("harvest", "collect an exact-LP distance spectrum");
  add_common(harvest_cmd, harvest_opts);

  std::string spectrum_path;
  auto* predict_cmd = app.add_subcommand("predict", "union-bound WER from a spectrum");
  add_common(predict_cmd, predict_opts);
  predict_cmd->add_option("-s,--spectrum", spectrum_path, "spectrum file");

  auto* gap_cmd = app.add_subcommand("gap", "report the softened-dual gap bound");
  add_common(gap_cmd, gap_opts);

  int cg_n = 155, cg_dv = 3, cg_dc = 5;
  std::uint64_t cg_seed = 1;
  bool cg_four = false;
  std::string cg_out;
  auto* codegen_cmd = app.add_subcommand("codegen", "generate a random regular code as alist");
  codegen_cmd->add_option("-n", cg_n, "block length");
  codegen_cmd->add_option("--dv", cg_dv, "variable degree");
  codegen_cmd->add_option("--dc", cg_dc, "check degree");
  codegen_cmd->add_option("--seed", cg_seed, "construction seed");
  codegen_cmd->add_flag("--allow-four-cycles", cg_four, "skip 4-cycle rejection");
  codegen_cmd->add_option("-o,--output", cg_out, "alist file");

  auto* channels_cmd = app.add_subcommand("channels", "list built-in channels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*decode_cmd) return cmd_decode(decode_opts, input, sigma);
    if (*sweep_cmd) return cmd_sweep(sweep_opts);
    if (*harvest_cmd) return cmd_harvest(harvest_opts);
    if (*predict_cmd) return cmd_predict(predict_opts, spectrum_path);
    if (*gap_cmd) return cmd_gap(gap_opts);
    if (*codegen_cmd) return cmd_codegen(cg_n, cg_dv, cg_dc, cg_seed, cg_four, cg_out);
    if (*channels_cmd) return cmd_channels();
  } catch (const jlp::NumericalAbort& e) {
    std::cerr << "jlpdec: numerical abort: " << e.what() << "\n";
    return 2;
  } catch (const jlp::ConfigError& e) {
    std::cerr << "jlpdec: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "jlpdec: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
