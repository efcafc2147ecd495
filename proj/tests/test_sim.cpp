#include <doctest.h>

#include <cmath>
#include <limits>

#include "jlp/sim.hpp"

using namespace jlp;

namespace {

ExperimentConfig small_config(DecoderKind decoder) {
  ExperimentConfig c;
  c.channel = "dic";
  c.code_source = "random";
  c.n = 48;
  c.dv = 3;
  c.dc = 6;
  c.code_seed = 3;
  c.decoder = decoder;
  c.max_trials = 600;
  c.max_errors = 1000;
  c.seed = 11;
  return c;
}

ExperimentConfig spc_config() {
  ExperimentConfig c;
  c.channel = "dic";
  c.code_source = "spc";
  c.n = 3;
  c.codeword = "110";
  c.start_state = 0;
  c.decoder = DecoderKind::exact_lp;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_CASE("decoder names round trip") {
  for (auto k : {DecoderKind::ijlp, DecoderKind::te, DecoderKind::te_ref, DecoderKind::exact_lp}) {
    CHECK(decoder_from_name(decoder_name(k)) == k);
  }
  CHECK_THROWS_AS(decoder_from_name("bp"), std::invalid_argument);
}

TEST_CASE("resolve experiment") {
  auto c = spc_config();
  const auto exp = resolve_experiment(c);
  CHECK(exp.code.n() == 3);
  CHECK(exp.codeword == BitVector{1, 1, 0});

  auto r = small_config(DecoderKind::ijlp);
  const auto e2 = resolve_experiment(r);
  CHECK(e2.code.n() == 48);
  CHECK(syndrome_ok(e2.code, e2.codeword));
  int weight = 0;
  for (auto b : e2.codeword) weight += b;
  CHECK(weight > 0);

  c.codeword = "111";
  CHECK_THROWS(resolve_experiment(c));
}

TEST_CASE("noiseless trials never err") {
  for (auto k : {DecoderKind::ijlp, DecoderKind::te, DecoderKind::te_ref}) {
    auto c = small_config(k);
    const auto exp = resolve_experiment(c);
    for (long t = 0; t < 5; ++t) {
      const auto o = run_trial(c, exp, 0.0, 0, t);
      CHECK_FALSE(o.error);
      CHECK(o.iterations == 1);
    }
  }
  auto c = spc_config();
  const auto exp = resolve_experiment(c);
  CHECK_FALSE(run_trial(c, exp, 0.0, 0, 0).error);
}

TEST_CASE("sweep results do not depend on worker count") {
  auto c = small_config(DecoderKind::ijlp);
  c.snr_db = {3.0, 5.0};
  c.workers = 1;
  const auto a = wer_sweep(c);
  c.workers = 3;
  const auto b = wer_sweep(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trials == b[i].trials);
    CHECK(a[i].errors == b[i].errors);
    CHECK(a[i].mean_iters == b[i].mean_iters);
  }
  CHECK(format_wer_csv(a) == format_wer_csv(b));
  CHECK(a[0].wer >= a[1].wer);
}

TEST_CASE("sweep stops at max_errors") {
  auto c = small_config(DecoderKind::te_ref);
  c.snr_db = {-2.0};
  c.max_errors = 7;
  const auto rows = wer_sweep(c);
  CHECK(rows[0].errors == 7);
  CHECK(rows[0].trials < c.max_trials);
  CHECK(rows[0].ci_lo <= rows[0].wer);
  CHECK(rows[0].wer <= rows[0].ci_hi);
}

TEST_CASE("sweep rejects empty grids") {
  auto c = small_config(DecoderKind::ijlp);
  CHECK_THROWS_AS(wer_sweep(c), std::invalid_argument);
}

TEST_CASE("wilson interval") {
  auto [lo, hi] = wilson_interval(0, 100);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(0.036995).epsilon(1e-4));
  std::tie(lo, hi) = wilson_interval(100, 100);
  CHECK(hi == 1.0);
  CHECK(lo == doctest::Approx(1.0 - 0.036995).epsilon(1e-4));
  std::tie(lo, hi) = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.403832).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.596168).epsilon(1e-4));
}

TEST_CASE("harvest at infinite SNR is empty") {
  auto c = spc_config();
  const auto exp = resolve_experiment(c);
  HarvestOptions h;
  h.snr_db = std::numeric_limits<double>::infinity();
  HarvestStats st;
  const auto s = harvest_pcws(c, exp, h, &st);
  CHECK(s.entries.empty());
  CHECK(st.trials == 0);
  CHECK(s.signal.size() == 3);
}

TEST_CASE("harvest needs exact-lp") {
  auto c = spc_config();
  c.decoder = DecoderKind::ijlp;
  CHECK_THROWS_AS(harvest_pcws(c, resolve_experiment(c), HarvestOptions{}),
                  std::invalid_argument);
}

TEST_CASE("harvest at 0 dB finds pseudo-codewords and is reproducible") {
  auto c = spc_config();
  const auto exp = resolve_experiment(c);
  HarvestOptions h;
  h.snr_db = 0.0;
  h.stationary_window = 300;
  h.max_trials = 20000;
  HarvestStats st;
  const auto a = harvest_pcws(c, exp, h, &st);
  CHECK(st.errors > 0);
  CHECK_FALSE(a.entries.empty());
  bool fractional = false;
  for (const auto& [key, e] : a.entries) {
    CHECK(e.d_gen > 0.0);
    CHECK(e.multiplicity >= 1);
    for (double f : e.example_f) fractional = fractional || (f > 1e-6 && f < 1.0 - 1e-6);
  }
  CHECK(fractional);
  const auto b = harvest_pcws(c, exp, h);
  CHECK(format_spectrum(a) == format_spectrum(b));
}

TEST_CASE("prediction") {
  DistanceSpectrum empty;
  const auto z = predict_wer(empty, {0.0, 5.0}, 0.5);
  CHECK(z[0].wer == 0.0);
  CHECK(z[1].wer == 0.0);

  auto c = spc_config();
  const auto exp = resolve_experiment(c);
  HarvestOptions h;
  h.stationary_window = 200;
  h.max_trials = 5000;
  const auto s = harvest_pcws(c, exp, h);
  const auto rows = predict_wer(s, {0.0, 3.0, 6.0, 9.0}, output_power(exp.spec));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].wer < rows[i - 1].wer);
  CHECK(rows[2].wer == doctest::Approx(union_bound(s, rows[2].sigma)));
  CHECK(format_prediction_csv(rows).rfind("snr_db,sigma,predicted_wer\n", 0) == 0);
}

TEST_CASE("noiseless signal") {
  const auto spec = channel_by_name("dic");
  const auto y = noiseless_signal(spec, BitVector{1, 1, 0}, 0);
  CHECK(y == std::vector<double>{1.0, 0.0, -1.0});
}
