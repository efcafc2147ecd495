#include <cmath>
#include <random>

#include "doctest.h"
#include "jlp/analysis.hpp"
#include "jlp/lpexact.hpp"
#include "jlp/simplex.hpp"

using namespace jlp;

namespace {

BranchMetrics noisy(const FscSpec& spec, const Trellis& t, const BitVector& bits, double sigma,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return awgn_metrics(t, simulate(spec, bits, sigma, std::nullopt, rng).y, false);
}

int count_family(const LpProblemP& p, RowFamily f) {
  int n = 0;
  for (auto x : p.family) n += x == f;
  return n;
}

}  // namespace

TEST_CASE("dense simplex on small programs") {
  // min -x - 2y  s.t.  x + y + s1 = 4,  y + s2 = 3
  DenseLp lp;
  lp.rows = 2;
  lp.cols = 4;
  lp.a = {1, 1, 1, 0, 0, 1, 0, 1};
  lp.b = {4, 3};
  lp.c = {-1, -2, 0, 0};
  auto r = simplex_minimize(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(-7.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(3.0));

  DenseLp inf = lp;
  inf.rows = 2;
  inf.cols = 2;
  inf.a = {1, 1, 1, 1};
  inf.b = {1, 2};
  inf.c = {0, 0};
  CHECK(simplex_minimize(inf).status == LpStatus::infeasible);

  DenseLp unb;
  unb.rows = 1;
  unb.cols = 2;
  unb.a = {1, -1};
  unb.b = {0};
  unb.c = {-1, 0};
  CHECK(simplex_minimize(unb).status == LpStatus::unbounded);

  // redundant row
  DenseLp red;
  red.rows = 2;
  red.cols = 2;
  red.a = {1, 1, 2, 2};
  red.b = {1, 2};
  red.c = {1, 3};
  auto rr = simplex_minimize(red);
  REQUIRE(rr.status == LpStatus::optimal);
  CHECK(rr.objective == doctest::Approx(1.0));
}

TEST_CASE("problem P dimensions") {
  const Trellis t(build_dicode(), 3);
  const auto b = awgn_metrics(t, std::vector<double>{0.1, 0.2, 0.3}, false);
  const auto p = build_problem_p(t, spc(3), b);
  CHECK(p.num_g == 12);
  CHECK(p.num_w == 4);
  CHECK(p.rows.size() == 9);
  CHECK(count_family(p, RowFamily::config_sum) == 1);
  CHECK(count_family(p, RowFamily::trellis_sum) == 1);
  CHECK(count_family(p, RowFamily::coupling) == 3);
  CHECK(count_family(p, RowFamily::flow) == 4);

  const Trellis t1(build_dicode(), 1);
  const LdpcCode none(1, {});
  const auto p1 = build_problem_p(t1, none, awgn_metrics(t1, std::vector<double>{0.4}, false));
  CHECK(p1.rows.size() == 1);
  CHECK(p1.num_w == 0);
  const auto s1 = simplex_solve(p1);
  CHECK(s1.objective == doctest::Approx(0.16));
}

TEST_CASE("p_index moves the sum row but not the optimum") {
  const auto spec = build_dicode();
  const Trellis t(spec, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = noisy(spec, t, BitVector{1, 1, 0}, 0.8, seed);
    const auto p0 = build_problem_p(t, spc(3), b, 0);
    const auto p2 = build_problem_p(t, spc(3), b, 2);
    CHECK(p0.row_names != p2.row_names);
    CHECK(simplex_solve(p0).objective == doctest::Approx(simplex_solve(p2).objective).epsilon(1e-9));
  }
  CHECK_THROWS(build_problem_p(t, spc(3), noisy(spec, t, BitVector(3, 0), 1.0, 0), 3));
}

TEST_CASE("noiseless solution is the true path") {
  const Trellis t(build_dicode(), 3);
  const auto b = awgn_metrics(t, std::vector<double>{1.0, 0.0, -1.0}, false);
  const auto sol = simplex_solve(build_problem_p(t, spc(3), b));
  CHECK(sol.kind == VertexKind::integral);
  CHECK(sol.objective == doctest::Approx(0.0));
  const auto path = t.path_of(BitVector{1, 1, 0}, 0);
  for (int i = 0; i < 3; ++i) CHECK(sol.g[i * 4 + path[i]] == doctest::Approx(1.0));
}

TEST_CASE("degenerate objective") {
  const Trellis t(build_dicode(), 4);
  BranchMetrics b{4, 4, std::vector<double>(16, 0.7)};
  const auto sol = simplex_solve(build_problem_p(t, spc(4), b));
  CHECK(sol.objective == doctest::Approx(4 * 0.7));
}

TEST_CASE("randomized search finds feasible fractional vertices") {
  const auto spec = build_dicode();
  const Trellis t(spec, 3);
  int fractional = 0;
  for (std::uint64_t seed = 0; seed < 3000 && fractional < 5; ++seed) {
    const auto b = noisy(spec, t, BitVector{1, 1, 0}, 1.0, seed);
    const auto problem = build_problem_p(t, spc(3), b);
    const auto sol = simplex_solve(problem);
    CHECK(problem_residual(problem, sol.g, sol.w) <= 1e-8);
    CHECK(lcp_violation(project_symbolwise(sol.g, t), spc(3)) <= 1e-8);
    if (sol.kind == VertexKind::fractional) {
      ++fractional;
      CHECK(classify(sol.g) == PcwKind::pseudo_codeword);
    }
  }
  CHECK(fractional > 0);
}

TEST_CASE("the printed fractional example is outside the polytope") {
  const std::vector<double> f{1.0, 0.5, 0.0};
  CHECK(lcp_violation(f, spc(3)) == doctest::Approx(0.5));
}

TEST_CASE("viterbi") {
  const auto spec = build_dicode();
  const Trellis t(spec, 3);
  const auto b = awgn_metrics(t, std::vector<double>{1.0, 0.0, -1.0}, false);
  const auto v = viterbi_ml_edge_path(t, b);
  CHECK(v.path == std::vector<int>{1, 3, 2});
  CHECK(v.value == 0.0);
  const auto bp0 = awgn_metrics(t, std::vector<double>{1.0, 0.0, -1.0}, true);
  CHECK(viterbi_ml_edge_path(t, bp0).value == doctest::Approx(std::log(2.0)));

  const LdpcCode none(3, {});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto bn = noisy(spec, t, BitVector{0, 1, 1}, 0.9, seed);
    CHECK(viterbi_ml_edge_path(t, bn).value ==
          doctest::Approx(simplex_solve(build_problem_p(t, none, bn)).objective).epsilon(1e-9));
  }

  const auto pr = build_pr2();
  const Trellis tp(pr, 6);
  std::mt19937_64 rng(2);
  const BitVector bits{1, 0, 1, 1, 0, 1};
  const auto tx = simulate(pr, bits, 0.0, 2, rng);
  const auto vp = viterbi_ml_edge_path(tp, awgn_metrics(tp, tx.y, false));
  CHECK(vp.value == 0.0);
  CHECK(vp.path == tx.path);
}

TEST_CASE("exhaustive joint ML") {
  const auto spec = build_dicode();
  const Trellis t(spec, 3);
  const auto b = awgn_metrics(t, std::vector<double>{1.0, 0.0, -1.0}, false);
  const auto ml = exhaustive_joint_ml(t, spc(3), b);
  CHECK(ml.codeword == BitVector{1, 1, 0});
  CHECK(ml.value == 0.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto bn = noisy(spec, t, BitVector{1, 0, 1}, 0.8, seed);
    const auto e = exhaustive_joint_ml(t, spc(3), bn);
    const auto sol = simplex_solve(build_problem_p(t, spc(3), bn));
    CHECK(e.value >= sol.objective - 1e-9);
    if (sol.kind == VertexKind::integral) {
      CHECK(e.value == doctest::Approx(sol.objective).epsilon(1e-9));
      const auto f = project_symbolwise(sol.g, t);
      for (int i = 0; i < 3; ++i) CHECK((f[i] > 0.5) == (e.codeword[i] == 1));
    }
  }
}

TEST_CASE("hard recursions") {
  const auto spec = build_dicode();
  const Trellis t(spec, 5);
  const auto code = spc(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = noisy(spec, t, BitVector{1, 0, 0, 1, 0}, 0.8, seed);
    const std::vector<double> zeros(5, 0.0);
    for (int p = 0; p < 5; ++p) {
      CHECK(hard_min_recursions(t, b, code, zeros, p).objective ==
            doctest::Approx(viterbi_ml_edge_path(t, b).value).epsilon(1e-12));
    }
  }
  const Trellis t1(spec, 1);
  const auto b1 = awgn_metrics(t1, std::vector<double>{0.3}, false);
  const auto h = hard_min_recursions(t1, b1, LdpcCode(1, {}), {}, 0);
  double best = 1e300;
  for (int e = 0; e < 4; ++e) best = std::min(best, b1(0, e));
  CHECK(h.objective == best);
  for (int k = 0; k < 2; ++k) {
    CHECK(h.fwd[k] == 0.0);
    CHECK(h.bwd[2 + k] == 0.0);
  }
}

TEST_CASE("lp export") {
  const Trellis t(build_dicode(), 3);
  const auto b = awgn_metrics(t, std::vector<double>{1.0, 0.0, -1.0}, false);
  const auto text = export_lp(build_problem_p(t, spc(3), b));
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("a_1:") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("classify flows") {
  std::vector<double> g{0, 1, 0, 0, 1e-9, 0, 0, 1.0 - 1e-9};
  CHECK(classify_flows(g, 1e-6) == VertexKind::integral);
  g[0] = 0.5;
  CHECK(classify_flows(g, 1e-6) == VertexKind::fractional);
}
