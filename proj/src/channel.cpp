#include "jlp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jlp {

namespace {

std::vector<double> uniform_dist(int n) {
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
}

void validate_dist(const std::vector<double>& dist, int num_states) {
  if (static_cast<int>(dist.size()) != num_states) {
    throw std::invalid_argument("initial distribution has wrong size");
  }
  double total = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative initial probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("initial distribution does not sum to 1");
  }
}

}  // namespace

FscSpec::FscSpec(std::string name, int num_states, std::vector<ChannelEdge> edges,
                 std::vector<double> initial_dist)
    : name_(std::move(name)),
      num_states_(num_states),
      edges_(std::move(edges)),
      initial_dist_(std::move(initial_dist)) {
  if (num_states_ < 1) throw std::invalid_argument("channel needs at least one state");
  validate_dist(initial_dist_, num_states_);

  std::sort(edges_.begin(), edges_.end(), [](const ChannelEdge& a, const ChannelEdge& b) {
    return a.from != b.from ? a.from < b.from : a.input < b.input;
  });

  edge_index_.assign(static_cast<std::size_t>(num_states_) * 2, -1);
  std::vector<int> count(edge_index_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.from < 0 || edge.from >= num_states_ || edge.to < 0 || edge.to >= num_states_) {
      throw std::invalid_argument("edge references unknown state");
    }
    if (edge.input > 1) throw std::invalid_argument("edge input must be binary");
    const std::size_t key = static_cast<std::size_t>(edge.from) * 2 + edge.input;
    ++count[key];
    edge_index_[key] = static_cast<int>(e);
    if (std::find(alphabet_.begin(), alphabet_.end(), edge.output) == alphabet_.end()) {
      alphabet_.push_back(edge.output);
    }
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  deterministic_ = std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
  if (!deterministic_) std::fill(edge_index_.begin(), edge_index_.end(), -1);
}

int FscSpec::edge_for(State s, Bit x) const {
  if (!deterministic_) throw std::logic_error("channel is not a deterministic FSISIC");
  return edge_index_[static_cast<std::size_t>(s) * 2 + x];
}

FscSpec FscSpec::with_initial_dist(std::vector<double> dist) const {
  return FscSpec(name_, num_states_, edges_, std::move(dist));
}

FscSpec FscSpec::with_start_state(State s) const {
  if (s < 0 || s >= num_states_) throw std::invalid_argument("start state out of range");
  std::vector<double> dist(static_cast<std::size_t>(num_states_), 0.0);
  dist[s] = 1.0;
  return with_initial_dist(std::move(dist));
}

FscSpec build_dicode() {
  // state = previous input, a = x - x_{-1}
  std::vector<ChannelEdge> edges;
  for (State s = 0; s < 2; ++s) {
    for (Bit x = 0; x < 2; ++x) {
      edges.push_back({s, x, static_cast<State>(x), static_cast<double>(x) - s});
    }
  }
  return FscSpec("dic", 2, std::move(edges), uniform_dist(2));
}

FscSpec build_precoded_dicode() {
  // state = last precoder output b; b' = x xor b, a = b' - b
  std::vector<ChannelEdge> edges;
  for (State s = 0; s < 2; ++s) {
    for (Bit x = 0; x < 2; ++x) {
      const State next = x ^ s;
      edges.push_back({s, x, next, static_cast<double>(next) - s});
    }
  }
  return FscSpec("pdic", 2, std::move(edges), uniform_dist(2));
}

FscSpec build_pr2() {
  // state = 2*x_{-1} + x_{-2}; a = x + 2 x_{-1} + x_{-2}
  std::vector<ChannelEdge> edges;
  for (State s = 0; s < 4; ++s) {
    const int prev1 = s >> 1;
    const int prev2 = s & 1;
    for (Bit x = 0; x < 2; ++x) {
      const State next = (x << 1) | prev1;
      edges.push_back({s, x, next, static_cast<double>(x + 2 * prev1 + prev2)});
    }
  }
  return FscSpec("pr2", 4, std::move(edges), uniform_dist(4));
}

FscSpec channel_by_name(std::string_view name) {
  if (name == "dic") return build_dicode();
  if (name == "pdic") return build_precoded_dicode();
  if (name == "pr2") return build_pr2();
  throw std::invalid_argument("unknown channel '" + std::string(name) + "' (expected dic|pdic|pr2)");
}

std::vector<std::string> channel_names() { return {"dic", "pdic", "pr2"}; }

Trellis::Trellis(const FscSpec& spec, int length)
    : length_(length),
      num_states_(spec.num_states()),
      edges_(spec.edges()),
      into_(static_cast<std::size_t>(spec.num_states())),
      out_of_(static_cast<std::size_t>(spec.num_states())),
      initial_dist_(spec.initial_dist()) {
  if (length < 1) throw std::invalid_argument("trellis length must be >= 1");
  for (int e = 0; e < num_edges(); ++e) {
    into_[edges_[e].to].push_back(e);
    out_of_[edges_[e].from].push_back(e);
  }
  edge_index_.assign(static_cast<std::size_t>(num_states_) * 2, -1);
  if (spec.is_deterministic()) {
    for (State s = 0; s < num_states_; ++s) {
      for (Bit x = 0; x < 2; ++x) edge_index_[static_cast<std::size_t>(s) * 2 + x] = spec.edge_for(s, x);
    }
  }
}

std::vector<int> Trellis::path_of(std::span<const Bit> bits, State start) const {
  std::vector<int> path;
  path.reserve(bits.size());
  State s = start;
  for (Bit x : bits) {
    const int e = edge_index_[static_cast<std::size_t>(s) * 2 + (x & 1)];
    if (e < 0) throw std::logic_error("trellis has no unique edge for (state, input)");
    path.push_back(e);
    s = edges_[e].to;
  }
  return path;
}

Trellis build_trellis(const FscSpec& spec, int n) { return Trellis(spec, n); }

Transmission simulate(const FscSpec& spec, std::span<const Bit> bits, double sigma,
                      std::optional<State> start_state, std::mt19937_64& rng) {
  if (!spec.is_deterministic()) {
    throw std::invalid_argument("simulation requires a deterministic-state (FSISIC) channel");
  }
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");

  Transmission out;
  if (start_state) {
    out.start_state = *start_state;
  } else {
    const auto& p0 = spec.initial_dist();
    std::discrete_distribution<int> pick(p0.begin(), p0.end());
    out.start_state = pick(rng);
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  out.y.reserve(bits.size());
  out.path.reserve(bits.size());
  State s = out.start_state;
  for (Bit x : bits) {
    const int e = spec.edge_for(s, x & 1);
    const auto& edge = spec.edges()[e];
    double y = edge.output;
    if (sigma > 0.0) y += sigma * noise(rng);
    out.y.push_back(y);
    out.path.push_back(e);
    s = edge.to;
  }
  return out;
}

double output_power(const FscSpec& spec) {
  if (!spec.is_deterministic()) throw std::invalid_argument("output power needs an FSISIC");
  const int ns = spec.num_states();
  // Stationary distribution of the state chain under uniform inputs; the
  // averaged iterate converges even for periodic chains.
  std::vector<double> pi(static_cast<std::size_t>(ns), 1.0 / ns);
  std::vector<double> avg(pi.size(), 0.0);
  const int rounds = 4096;
  for (int it = 0; it < rounds; ++it) {
    std::vector<double> next(pi.size(), 0.0);
    for (const auto& e : spec.edges()) next[e.to] += 0.5 * pi[e.from];
    pi = std::move(next);
    for (std::size_t k = 0; k < pi.size(); ++k) avg[k] += pi[k] / rounds;
  }
  double power = 0.0;
  for (const auto& e : spec.edges()) power += avg[e.from] * 0.5 * e.output * e.output;
  return power;
}

double sigma_from_snr_db(double power, double snr_db) {
  if (snr_db >= 100.0) return 0.0;
  return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

double snr_db_from_sigma(double power, double sigma) {
  if (sigma <= 0.0) return 100.0;
  return 10.0 * std::log10(power / (sigma * sigma));
}

}  // namespace jlp
