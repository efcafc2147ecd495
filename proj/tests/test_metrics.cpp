#include <cmath>
#include "doctest.h"
#include "jlp/metrics.hpp"

using namespace jlp;

TEST_CASE("awgn metrics") {
  const Trellis t(build_dicode(), 3);
  const std::vector<double> y{1.0, 0.0, -1.0};
  const auto b = awgn_metrics(t, y, false);
  CHECK(b.n == 3);
  CHECK(b.o == 4);
  CHECK(b(0, 1) == 0.0);  // edge (0,1), a = 1
  const auto path = t.path_of(BitVector{1, 1, 0}, 0);
  CHECK(path_metric(b, path) == 0.0);

  const std::vector<double> half{0.5};
  const Trellis t1(build_dicode(), 1);
  CHECK(awgn_metrics(t1, half, false)(0, 2) == doctest::Approx(2.25));  // edge (1,0), a = -1
}

TEST_CASE("scaled metrics divide by 2 sigma^2") {
  const Trellis t(build_pr2(), 2);
  const std::vector<double> y{0.3, 2.2};
  const auto u = awgn_metrics(t, y, false);
  const auto s = awgn_metrics(t, y, false, 0.5);
  for (std::size_t k = 0; k < u.b.size(); ++k) CHECK(s.b[k] == doctest::Approx(u.b[k] / 0.5));
}

TEST_CASE("initial state term") {
  const auto spec = build_dicode().with_start_state(0);
  const Trellis t(spec, 1);
  const std::vector<double> y{0.0};
  const auto b = awgn_metrics(t, y, true);
  for (int e = 0; e < t.num_edges(); ++e) {
    if (t.from(e) == 1) {
      CHECK(b(0, e) >= kImpossibleStateCost);
    } else {
      CHECK(b(0, e) < 2.0);
    }
  }
  const Trellis tu(build_dicode(), 1);
  const auto bu = awgn_metrics(tu, y, true);
  CHECK(bu(0, 0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("general metrics") {
  const Trellis t(build_dicode(), 2);
  std::vector<double> ll(8, 3.0);
  const auto b = general_metrics(t, ll, false);
  for (double v : b.b) CHECK(v == 3.0);
  CHECK_THROWS(general_metrics(t, std::vector<double>(7, 0.0), false));

  // affine transform of the AWGN log-likelihood keeps the best path
  const std::vector<double> y{0.8, -0.3};
  const double sigma = 0.6;
  const auto a = awgn_metrics(t, y, false);
  std::vector<double> ll2(8);
  for (int i = 0; i < 2; ++i) {
    for (int e = 0; e < 4; ++e) ll2[i * 4 + e] = a(i, e) / (2 * sigma * sigma) + 0.5 * std::log(2 * M_PI * sigma * sigma);
  }
  const auto g = general_metrics(t, ll2, false);
  int best_a = -1, best_g = -1;
  double va = 1e300, vg = 1e300;
  for (int s = 0; s < 2; ++s) {
    for (int x0 = 0; x0 < 2; ++x0) {
      for (int x1 = 0; x1 < 2; ++x1) {
        const BitVector bits{static_cast<Bit>(x0), static_cast<Bit>(x1)};
        const auto p = t.path_of(bits, s);
        const int id = s * 4 + x0 * 2 + x1;
        if (path_metric(a, p) < va) va = path_metric(a, p), best_a = id;
        if (path_metric(g, p) < vg) vg = path_metric(g, p), best_g = id;
      }
    }
  }
  CHECK(best_a == best_g);
}

TEST_CASE("length mismatch") {
  const Trellis t(build_dicode(), 3);
  CHECK_THROWS(awgn_metrics(t, std::vector<double>{1.0}, false));
}
