#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jlp {

using State = int;
using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

/// One labeled transition of a finite-state channel.
struct ChannelEdge {
  State from = 0;
  Bit input = 0;
  State to = 0;
  double output = 0.0;  // noiseless output a(e)
};

/// Finite-state channel description: state count, labeled transitions,
/// initial-state distribution and output alphabet.
class FscSpec {
 public:
  FscSpec(std::string name, int num_states, std::vector<ChannelEdge> edges,
          std::vector<double> initial_dist);

  const std::string& name() const { return name_; }
  int num_states() const { return num_states_; }
  const std::vector<ChannelEdge>& edges() const { return edges_; }
  const std::vector<double>& initial_dist() const { return initial_dist_; }
  const std::vector<double>& output_alphabet() const { return alphabet_; }

  /// True when every (state, input) pair has exactly one outgoing edge.
  bool is_deterministic() const { return deterministic_; }

  /// Edge index for (state, input); only valid for deterministic channels.
  int edge_for(State s, Bit x) const;

  /// Copy with a different initial-state distribution.
  FscSpec with_initial_dist(std::vector<double> dist) const;
  /// Copy whose transmitter starts in `s` with probability one.
  FscSpec with_start_state(State s) const;

 private:
  std::string name_;
  int num_states_;
  std::vector<ChannelEdge> edges_;
  std::vector<double> initial_dist_;
  std::vector<double> alphabet_;
  bool deterministic_ = false;
  std::vector<int> edge_index_;  // [s * 2 + x] -> edge or -1
};

FscSpec build_dicode();
FscSpec build_precoded_dicode();
FscSpec build_pr2();

/// "dic" | "pdic" | "pr2"; throws std::invalid_argument otherwise.
FscSpec channel_by_name(std::string_view name);
std::vector<std::string> channel_names();

/// Time-invariant trellis: `length` identical sections, edges sorted by
/// (from state, input) so that edge indices are stable across runs.
class Trellis {
 public:
  Trellis(const FscSpec& spec, int length);

  int length() const { return length_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_states() const { return num_states_; }

  const ChannelEdge& edge(int e) const { return edges_[e]; }
  const std::vector<ChannelEdge>& edges() const { return edges_; }
  State from(int e) const { return edges_[e].from; }
  State to(int e) const { return edges_[e].to; }
  Bit input(int e) const { return edges_[e].input; }
  double output(int e) const { return edges_[e].output; }

  /// Edges ending in / starting from state k.
  const std::vector<int>& edges_into(State k) const { return into_[k]; }
  const std::vector<int>& edges_from(State k) const { return out_of_[k]; }

  const std::vector<double>& initial_dist() const { return initial_dist_; }

  /// Unique edge path of an input word from a fixed start state.
  std::vector<int> path_of(std::span<const Bit> bits, State start) const;

 private:
  int length_;
  int num_states_;
  std::vector<ChannelEdge> edges_;
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<int>> out_of_;
  std::vector<double> initial_dist_;
  std::vector<int> edge_index_;
};

Trellis build_trellis(const FscSpec& spec, int n);

struct Transmission {
  std::vector<double> y;
  std::vector<int> path;
  State start_state = 0;
};

/// Passes `bits` through the channel and adds N(0, sigma^2) noise. The start
/// state is drawn from P0 unless given.
Transmission simulate(const FscSpec& spec, std::span<const Bit> bits,
                      double sigma, std::optional<State> start_state,
                      std::mt19937_64& rng);

/// E[a^2] under i.i.d. uniform inputs at the stationary state distribution.
double output_power(const FscSpec& spec);

double sigma_from_snr_db(double power, double snr_db);
double snr_db_from_sigma(double power, double sigma);

}  // namespace jlp
