#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jlp/channel.hpp"

namespace jlp {

/// Sparse binary parity-check structure. Tanner-graph edges are numbered
/// check-major: the k-th neighbor of check j has id check_offset(j) + k.
class LdpcCode {
 public:
  LdpcCode(int n, std::vector<std::vector<int>> check_neighbors);

  int n() const { return n_; }
  int m() const { return static_cast<int>(check_neighbors_.size()); }
  int num_edges() const { return static_cast<int>(edge_var_.size()); }

  const std::vector<int>& check_neighbors(int j) const { return check_neighbors_[j]; }
  const std::vector<int>& var_neighbors(int i) const { return var_neighbors_[i]; }
  /// Edge ids incident to variable i, aligned with var_neighbors(i).
  const std::vector<int>& var_edges(int i) const { return var_edges_[i]; }
  int check_offset(int j) const { return check_offset_[j]; }
  int check_degree(int j) const { return static_cast<int>(check_neighbors_[j].size()); }
  int var_degree(int i) const { return static_cast<int>(var_neighbors_[i].size()); }
  int edge_var(int e) const { return edge_var_[e]; }
  int edge_check(int e) const { return edge_check_[e]; }
  int max_check_degree() const;

  /// R = 1 - M/N (design rate; ignores rank deficiency).
  double rate() const { return 1.0 - static_cast<double>(m()) / n_; }
  /// Sum of check degrees divided by N.
  double avg_check_degree_per_bit() const {
    return static_cast<double>(num_edges()) / n_;
  }
  /// Some check has fewer than three neighbors; the cyclic solver's
  /// convergence guarantee does not cover such codes.
  bool convergence_warning() const;

  bool operator==(const LdpcCode& other) const {
    return n_ == other.n_ && check_neighbors_ == other.check_neighbors_;
  }

 private:
  int n_;
  std::vector<std::vector<int>> check_neighbors_;
  std::vector<std::vector<int>> var_neighbors_;
  std::vector<std::vector<int>> var_edges_;
  std::vector<int> check_offset_;
  std::vector<int> edge_var_;
  std::vector<int> edge_check_;
};

class CodeConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random (dv, dc)-regular code without double edges. Unless
/// `allow_four_cycles` is set, 4-cycles are rejected during construction
/// (girth >= 6); gives up after 1000 attempts.
LdpcCode random_regular(int n, int dv, int dc, std::uint64_t seed,
                        bool allow_four_cycles = false);

/// Single parity check over n bits.
LdpcCode spc(int n);

bool syndrome_ok(const LdpcCode& code, std::span<const Bit> word);
int syndrome_weight(const LdpcCode& code, std::span<const Bit> word);

/// Even-weight configurations of check j as bitmasks over the positions of
/// check_neighbors(j). Refuses degrees above 16.
std::vector<std::uint32_t> check_configs(const LdpcCode& code, int j);
constexpr int kMaxEnumeratedCheckDegree = 16;

/// Length of the shortest cycle in the Tanner graph (0 when acyclic).
int girth(const LdpcCode& code);

/// Basis of the GF(2) null space of H.
std::vector<BitVector> codeword_basis(const LdpcCode& code);
/// Every codeword, in lexicographic order; refuses dimension above 20.
std::vector<BitVector> all_codewords(const LdpcCode& code);
/// Uniformly random codeword from the null space.
BitVector random_codeword(const LdpcCode& code, std::uint64_t seed);

class AlistError : public std::runtime_error {
 public:
  AlistError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

LdpcCode parse_alist(const std::string& text);
std::string format_alist(const LdpcCode& code);
LdpcCode load_alist(const std::filesystem::path& path);
void save_alist(const LdpcCode& code, const std::filesystem::path& path);

}  // namespace jlp
