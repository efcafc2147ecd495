#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "jlp/analysis.hpp"
#include "jlp/lpexact.hpp"

using namespace jlp;

namespace {

const std::vector<double> kTcw{0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
const std::vector<double> kPcw{0, 1, 0, 0, 0, 0, 0.5, 0.5, 0.5, 0, 0.5, 0};

double dot_metric(const BranchMetrics& b, const std::vector<double>& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += b.b[k] * g[k];
  return s;
}

}  // namespace

TEST_CASE("projections of the two example flows") {
  const Trellis t(build_dicode(), 3);
  CHECK(project_symbolwise(kTcw, t) == std::vector<double>{1.0, 1.0, 0.0});
  CHECK(project_symbolwise(kPcw, t) == std::vector<double>{1.0, 0.5, 0.0});
  CHECK(project_signal_space(kTcw, t) == std::vector<double>{1.0, 0.0, -1.0});
  CHECK(project_signal_space(kPcw, t) == std::vector<double>{1.0, -0.5, -0.5});
  const std::vector<double> zero_path{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
  CHECK(project_symbolwise(zero_path, t) == std::vector<double>(3, 0.0));
  CHECK(project_signal_space(zero_path, t) == std::vector<double>(3, 0.0));
}

TEST_CASE("classification") {
  CHECK(classify(kTcw) == PcwKind::codeword);
  CHECK(classify(kPcw) == PcwKind::pseudo_codeword);
  auto g = kTcw;
  g[1] -= 1e-9;
  g[0] += 1e-9;
  CHECK(classify(g, 1e-6) == PcwKind::codeword);
  CHECK(std::string(to_string(PcwKind::codeword)) != to_string(PcwKind::pseudo_codeword));
}

TEST_CASE("generalized distance") {
  const Trellis t(build_dicode(), 3);
  const std::vector<double> c{1.0, 0.0, -1.0};
  CHECK(d_gen_squared(c, kPcw, t) == doctest::Approx(2.0));
  CHECK(d_gen(c, kPcw, t) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(d_gen(c, kTcw, t), std::domain_error);

  // integral competitor: plain Euclidean distance
  const std::vector<double> zero_path{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
  CHECK(d_gen(c, zero_path, t) == doctest::Approx(std::sqrt(2.0)));

  // doubling every output doubles d_gen of integral competitors
  std::vector<ChannelEdge> edges = build_dicode().edges();
  for (auto& e : edges) e.output *= 2.0;
  const Trellis t2(FscSpec("dic2", 2, edges, {0.5, 0.5}), 3);
  const std::vector<double> c2{2.0, 0.0, -2.0};
  CHECK(d_gen(c2, zero_path, t2) == doctest::Approx(2.0 * d_gen(c, zero_path, t)));
}

TEST_CASE("tail probabilities") {
  CHECK(q_function(0.0) == doctest::Approx(0.5));
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
  CHECK(pairwise_error_prob(std::sqrt(2.0), 1.0) == doctest::Approx(0.23975006109347673).epsilon(1e-12));
  CHECK(pairwise_error_prob(1e-12, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS(pairwise_error_prob(1.0, 0.0));
}

TEST_CASE("pairwise error frequency matches Q") {
  const auto spec = build_dicode();
  const Trellis t(spec, 3);
  const double sigma = 0.8;
  std::mt19937_64 rng(12345);
  const int draws = 100000;
  int hits = 0;
  for (int k = 0; k < draws; ++k) {
    const auto tx = simulate(spec, BitVector{1, 1, 0}, sigma, 0, rng);
    const auto b = awgn_metrics(t, tx.y, false);
    if (dot_metric(b, kPcw) <= dot_metric(b, kTcw)) ++hits;
  }
  const double p = pairwise_error_prob(std::sqrt(2.0), sigma);
  const double se = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(static_cast<double>(hits) / draws - p) <= 3 * se);
}

TEST_CASE("spectrum and union bound") {
  const Trellis t(build_dicode(), 3);
  DistanceSpectrum s;
  s.reference = {1, 1, 0};
  s.signal = {1.0, 0.0, -1.0};
  CHECK(union_bound(s, 1.0) == 0.0);
  CHECK(s.add(kPcw, t));
  CHECK_FALSE(s.add(kPcw, t));
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries.begin()->second.d_gen == doctest::Approx(1.4142));
  CHECK(union_bound(s, 1.0) == doctest::Approx(0.23975).epsilon(1e-4));
  CHECK(s.total_multiplicity() == 1);

  const std::vector<double> zero_path{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
  CHECK(s.add(zero_path, t));
  CHECK(s.entries.size() == 1);
  CHECK(s.total_multiplicity() == 2);

  const auto text = format_spectrum(s);
  const auto back = parse_spectrum(text);
  CHECK(back.reference == s.reference);
  CHECK(back.signal == s.signal);
  CHECK(back.entries.size() == 1);
  CHECK(back.entries.begin()->second.multiplicity == 2);
  CHECK(format_spectrum(back) == text);

  const auto dir = std::filesystem::temp_directory_path() / "jlp_spectrum_test";
  std::filesystem::create_directories(dir);
  save_spectrum(s, dir / "s.txt");
  CHECK(format_spectrum(load_spectrum(dir / "s.txt")) == text);
  std::filesystem::remove_all(dir);

  try {
    parse_spectrum("reference 1 1 0\nsignal 1 0 -1\napproximate 0\n1.4142 x\n");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("gap bound") {
  const Trellis t155(build_dicode(), 155);
  const auto g = gap_delta(random_regular(155, 3, 5, 1), t155, 1000.0, 100.0);
  CHECK(g.delta == doctest::Approx(2.584768195894505e-3).epsilon(1e-12));
  const Trellis t3(build_dicode(), 3);
  for (double k : {1.0, 10.0, 1000.0}) {
    CHECK(gap_delta(spc(3), t3, k, 2 * k).delta ==
          doctest::Approx(0.9241962407465937 / k + 0.46209812037329687 / (2 * k)).epsilon(1e-12));
  }
  CHECK(gap_delta(spc(3), t3, 1e12, 1e12).delta < 1e-11);
  CHECK_THROWS(gap_delta(spc(3), t3, 0.0, 1.0));
}

TEST_CASE("entropy") {
  CHECK(entropy(std::vector<double>{1, 0, 0, 0}) == 0.0);
  CHECK(entropy(std::vector<double>{.25, .25, .25, .25}) == doctest::Approx(std::log(4.0)));
  CHECK(entropy(std::vector<double>{.5, .5, 0, 0}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("local codeword polytope") {
  const auto c = spc(3);
  CHECK(lcp_violation(std::vector<double>{1, 1, 0}, c) == 0.0);
  CHECK(lcp_violation(std::vector<double>{1, 0, 0}, c) == doctest::Approx(1.0));
  CHECK(lcp_violation(std::vector<double>{0.5, 0.5, 0.5}, c) == 0.0);
  CHECK(lcp_violation(std::vector<double>{1.2, 1, 0.2}, c) == doctest::Approx(0.4));
}

TEST_CASE("problem P residual of the example codeword") {
  const Trellis t(build_dicode(), 3);
  const auto code = spc(3);
  const auto configs = check_configs(code, 0);
  std::vector<double> w(configs.size(), 0.0);
  for (std::size_t k = 0; k < configs.size(); ++k) w[k] = configs[k] == 0b011 ? 1.0 : 0.0;
  CHECK(problem_p_residual(kTcw, {w}, code, t) <= 1e-12);
  std::vector<double> w0(configs.size(), 0.0);
  w0[0] = 1.0;
  CHECK(problem_p_residual(kTcw, {w0}, code, t) > 0.5);
}

TEST_CASE("primal from a converged dual") {
  const auto spec = build_dicode();
  const auto code = spc(3);
  const Trellis t(spec, 3);
  std::mt19937_64 rng(4);
  const auto tx = simulate(spec, BitVector{1, 1, 0}, 0.8, std::nullopt, rng);
  const auto b = awgn_metrics(t, tx.y, false);
  DecoderParams p;
  p.k1 = p.k2 = 100.0;
  CyclicOptions opt;
  opt.eps_stop = 0.0;
  const auto r = cyclic_decode(b, code, t, p, opt);
  const auto pd = primal_from_dual(r.state, b, code, t, p);
  CHECK(pd.eps < 1e-8);
  CHECK(problem_p_residual(pd.g, pd.w, code, t) <= 1e-8);
  CHECK(lcp_violation(project_symbolwise(pd.g, t), code) <= 1e-8);
  const double pstar = simplex_solve(build_problem_p(t, code, b)).objective;
  const auto gb = gap_delta(code, t, p.k1, p.k2, pd.eps, pd.sum_abs_b, pd.c_const);
  CHECK(pd.value - pstar >= -1e-9);
  CHECK(pd.value - pstar <= gb.delta * 3);
  // the smoothed primal value equals the dual optimum
  auto s = r.state;
  refresh_from_messages(s, b, code, t, p);
  CHECK(pd.ps_value <= dual_objective(s, code, t, p) + 1e-6);
}

TEST_CASE("primal construction at zero residual leaves flows unchanged") {
  const auto spec = build_dicode();
  const auto code = spc(3);
  const Trellis t(spec, 3);
  BranchMetrics b{3, 4, std::vector<double>(12, 1.0)};
  DecoderParams p;
  p.k1 = p.k2 = 1.0;
  auto s = MessageState::zeros(code, t);
  // uniform metrics and zero messages: trellis bits are fair coins, as are check marginals
  const auto pd = primal_from_dual(s, b, code, t, p);
  CHECK(pd.eps == doctest::Approx(0.0).epsilon(1e-15));
  refresh_from_messages(s, b, code, t, p);
  const auto g = trellis_marginals(s, t);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(pd.g[k] == doctest::Approx(g[k]).epsilon(1e-14));
}

TEST_CASE("primal construction is feasible at mid-iteration states") {
  const auto spec = build_precoded_dicode();
  const auto code = random_regular(8, 3, 4, 1, true);
  const Trellis t(spec, 8);
  int built = 0;
  for (std::uint64_t seed = 0; seed < 400 && built < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto tx = simulate(spec, random_codeword(code, seed), 0.9, std::nullopt, rng);
    const auto b = awgn_metrics(t, tx.y, false);
    DecoderParams p;
    p.k1 = p.k2 = 3.0;
    CyclicOptions opt;
    opt.max_sweeps = 1 + static_cast<int>(seed % 4);
    const auto r = cyclic_decode(b, code, t, p, opt);
    try {
      const auto pd = primal_from_dual(r.state, b, code, t, p);
      ++built;
      CHECK(pd.eps <= 1.0 / 6.0);
      CHECK(problem_p_residual(pd.g, pd.w, code, t) <= 1e-8);
      CHECK(lcp_violation(project_symbolwise(pd.g, t), code) <= 1e-8);
    } catch (const ConstructionRefused&) {
    }
  }
  CHECK(built >= 50);
}
