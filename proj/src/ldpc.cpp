#include "jlp/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "jlp/util.hpp"

namespace jlp {

LdpcCode::LdpcCode(int n, std::vector<std::vector<int>> check_neighbors)
    : n_(n), check_neighbors_(std::move(check_neighbors)) {
  if (n_ < 1) throw std::invalid_argument("code length must be positive");
  var_neighbors_.assign(static_cast<std::size_t>(n_), {});
  var_edges_.assign(static_cast<std::size_t>(n_), {});
  int edge = 0;
  for (int j = 0; j < m(); ++j) {
    auto& nb = check_neighbors_[j];
    if (nb.empty()) throw std::invalid_argument("check " + std::to_string(j) + " is empty");
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw std::invalid_argument("check " + std::to_string(j) + " has a double edge");
    }
    check_offset_.push_back(edge);
    for (int i : nb) {
      if (i < 0 || i >= n_) throw std::invalid_argument("check references bit out of range");
      var_neighbors_[i].push_back(j);
      var_edges_[i].push_back(edge);
      edge_var_.push_back(i);
      edge_check_.push_back(j);
      ++edge;
    }
  }
}

int LdpcCode::max_check_degree() const {
  int d = 0;
  for (const auto& nb : check_neighbors_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

bool LdpcCode::convergence_warning() const {
  return std::any_of(check_neighbors_.begin(), check_neighbors_.end(),
                     [](const auto& nb) { return nb.size() < 3; });
}

namespace {

// One attempt at a regular construction. Checks are filled evenly: each bit
// draws among the checks with the most free sockets that keep the graph free
// of double edges (and of 4-cycles unless allowed).
bool try_regular(int n, int dv, int dc, bool allow_four_cycles, std::mt19937_64& rng,
                 std::vector<std::vector<int>>& checks) {
  const int m = n * dv / dc;
  checks.assign(static_cast<std::size_t>(m), {});
  std::vector<int> free(static_cast<std::size_t>(m), dc);
  // adjacent[a*m+b]: checks a and b already share a bit
  std::vector<std::uint8_t> adjacent(static_cast<std::size_t>(m) * m, 0);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  for (int i : order) {
    std::vector<int> chosen;
    for (int k = 0; k < dv; ++k) {
      int best_free = 0;
      std::vector<int> candidates;
      for (int c = 0; c < m; ++c) {
        if (free[c] == 0) continue;
        if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
        if (!allow_four_cycles) {
          bool conflict = false;
          for (int c2 : chosen) {
            if (adjacent[static_cast<std::size_t>(c) * m + c2]) {
              conflict = true;
              break;
            }
          }
          if (conflict) continue;
        }
        if (free[c] > best_free) {
          best_free = free[c];
          candidates.clear();
        }
        if (free[c] == best_free) candidates.push_back(c);
      }
      if (candidates.empty()) return false;
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      chosen.push_back(candidates[pick(rng)]);
    }
    for (int c : chosen) {
      checks[c].push_back(i);
      --free[c];
    }
    for (int a : chosen) {
      for (int b : chosen) adjacent[static_cast<std::size_t>(a) * m + b] = 1;
    }
  }
  return true;
}

}  // namespace

LdpcCode random_regular(int n, int dv, int dc, std::uint64_t seed, bool allow_four_cycles) {
  if (n < 1 || dv < 1 || dc < 2) throw std::invalid_argument("invalid code parameters");
  if ((n * dv) % dc != 0) {
    throw std::invalid_argument("n*dv must be divisible by dc");
  }
  if (dc > n) throw std::invalid_argument("check degree exceeds code length");
  constexpr int kMaxAttempts = 1000;
  std::vector<std::vector<int>> checks;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (try_regular(n, dv, dc, allow_four_cycles, rng, checks)) {
      return LdpcCode(n, std::move(checks));
    }
  }
  throw CodeConstructionError("could not build a (" + std::to_string(dv) + "," +
                              std::to_string(dc) + ")-regular code of length " +
                              std::to_string(n) + " after 1000 attempts");
}

LdpcCode spc(int n) {
  if (n < 2) throw std::invalid_argument("spc needs n >= 2");
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return LdpcCode(n, {all});
}

int syndrome_weight(const LdpcCode& code, std::span<const Bit> word) {
  if (static_cast<int>(word.size()) != code.n()) {
    throw std::invalid_argument("word length does not match code length");
  }
  int weight = 0;
  for (int j = 0; j < code.m(); ++j) {
    int parity = 0;
    for (int i : code.check_neighbors(j)) parity ^= word[i] & 1;
    weight += parity;
  }
  return weight;
}

bool syndrome_ok(const LdpcCode& code, std::span<const Bit> word) {
  return syndrome_weight(code, word) == 0;
}

std::vector<std::uint32_t> check_configs(const LdpcCode& code, int j) {
  const int d = code.check_degree(j);
  if (d > kMaxEnumeratedCheckDegree) {
    throw std::invalid_argument("check degree " + std::to_string(d) +
                                " too large to enumerate configurations");
  }
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t{1} << (d - 1));
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) % 2 == 0) out.push_back(mask);
  }
  return out;
}

int girth(const LdpcCode& code) {
  // BFS from every variable node over the bipartite graph.
  const int nodes = code.n() + code.m();
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(nodes));
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  for (int root = 0; root < code.n(); ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      auto visit = [&](int v) {
        if (v == parent[u]) return;
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else {
          const int cycle = dist[u] + dist[v] + 1;
          if (best == 0 || cycle < best) best = cycle;
        }
      };
      if (u < code.n()) {
        for (int j : code.var_neighbors(u)) visit(code.n() + j);
      } else {
        for (int i : code.check_neighbors(u - code.n())) visit(i);
      }
    }
  }
  return best;
}

std::vector<BitVector> codeword_basis(const LdpcCode& code) {
  const int n = code.n();
  std::vector<BitVector> rows;
  for (int j = 0; j < code.m(); ++j) {
    BitVector row(static_cast<std::size_t>(n), 0);
    for (int i : code.check_neighbors(j)) row[i] = 1;
    rows.push_back(std::move(row));
  }
  // Reduced row echelon form over GF(2).
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int k = r; k < static_cast<int>(rows.size()); ++k) {
      if (rows[k][c]) {
        sel = k;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
      if (k != r && rows[k][c]) {
        for (int t = 0; t < n; ++t) rows[k][t] ^= rows[r][t];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::uint8_t> is_pivot(static_cast<std::size_t>(n), 0);
  for (int c : pivot_col) is_pivot[c] = 1;

  std::vector<BitVector> basis;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    BitVector v(static_cast<std::size_t>(n), 0);
    v[free_col] = 1;
    for (int k = 0; k < r; ++k) {
      if (rows[k][free_col]) v[pivot_col[k]] = 1;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVector> all_codewords(const LdpcCode& code) {
  const auto basis = codeword_basis(code);
  if (basis.size() > 20) throw std::invalid_argument("code dimension too large to enumerate");
  std::vector<BitVector> words;
  const std::size_t count = std::size_t{1} << basis.size();
  words.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    BitVector w(static_cast<std::size_t>(code.n()), 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (mask >> b & 1) {
        for (int i = 0; i < code.n(); ++i) w[i] ^= basis[b][i];
      }
    }
    words.push_back(std::move(w));
  }
  std::sort(words.begin(), words.end());
  return words;
}

BitVector random_codeword(const LdpcCode& code, std::uint64_t seed) {
  const auto basis = codeword_basis(code);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  BitVector w(static_cast<std::size_t>(code.n()), 0);
  for (const auto& b : basis) {
    if (coin(rng)) {
      for (int i = 0; i < code.n(); ++i) w[i] ^= b[i];
    }
  }
  return w;
}

AlistError::AlistError(int line, int column, const std::string& what)
    : std::runtime_error("alist line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  long value;
  int line;
  int column;
};

class TokenStream {
 public:
  explicit TokenStream(const std::string& text) {
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char ch = text[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++col;
        ++i;
        continue;
      }
      const int start_col = col;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      const std::string word = text.substr(i, j - i);
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(word, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != word.size() || word.empty()) {
        throw AlistError(line, start_col, "expected an integer, found '" + word + "'");
      }
      tokens_.push_back({v, line, start_col});
      col += static_cast<int>(j - i);
      i = j;
    }
    end_line_ = line;
  }

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) {
      throw AlistError(end_line_, 1, std::string("unexpected end of file while reading ") + what);
    }
    return tokens_[pos_++];
  }

  bool exhausted() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int end_line_ = 1;
};

}  // namespace

LdpcCode parse_alist(const std::string& text) {
  TokenStream ts(text);
  const Token tn = ts.next("N");
  const Token tm = ts.next("M");
  if (tn.value < 1) throw AlistError(tn.line, tn.column, "N must be positive");
  if (tm.value < 1) throw AlistError(tm.line, tm.column, "M must be positive");
  const int n = static_cast<int>(tn.value);
  const int m = static_cast<int>(tm.value);
  const Token tmaxc = ts.next("max column weight");
  const Token tmaxr = ts.next("max row weight");

  std::vector<int> col_w(static_cast<std::size_t>(n));
  std::vector<int> row_w(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    const Token t = ts.next("column weights");
    if (t.value < 0 || t.value > tmaxc.value) {
      throw AlistError(t.line, t.column, "column weight exceeds declared maximum");
    }
    col_w[i] = static_cast<int>(t.value);
  }
  for (int j = 0; j < m; ++j) {
    const Token t = ts.next("row weights");
    if (t.value < 0 || t.value > tmaxr.value) {
      throw AlistError(t.line, t.column, "row weight exceeds declared maximum");
    }
    row_w[j] = static_cast<int>(t.value);
  }

  // Column lists may be zero-padded to the maximum weight; detect padding by
  // line structure: entries beyond the column weight must be zero.
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < tmaxc.value; ++k) {
      if (ts.exhausted()) throw AlistError(0, 0, "unexpected end of file in column lists");
      const Token& t = ts.peek();
      if (k >= col_w[i]) {
        if (t.value != 0) break;  // unpadded list
        ts.next("column padding");
        continue;
      }
      ts.next("column entries");
      if (t.value < 1 || t.value > m) {
        throw AlistError(t.line, t.column, "check index out of range");
      }
      cols[i].push_back(static_cast<int>(t.value) - 1);
    }
  }
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < tmaxr.value; ++k) {
      if (ts.exhausted()) {
        if (k >= row_w[j]) break;
        throw AlistError(0, 0, "unexpected end of file in row lists");
      }
      const Token& t = ts.peek();
      if (k >= row_w[j]) {
        if (t.value != 0) break;
        ts.next("row padding");
        continue;
      }
      ts.next("row entries");
      if (t.value < 1 || t.value > n) {
        throw AlistError(t.line, t.column, "bit index out of range");
      }
      rows[j].push_back(static_cast<int>(t.value) - 1);
    }
  }
  if (!ts.exhausted()) {
    const Token& t = ts.peek();
    throw AlistError(t.line, t.column, "trailing data after row lists");
  }

  // Cross-check the two views.
  std::vector<std::vector<int>> from_cols(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    for (int j : cols[i]) from_cols[j].push_back(i);
  }
  for (int j = 0; j < m; ++j) {
    auto a = from_cols[j];
    auto b = rows[j];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      throw AlistError(0, 0, "row " + std::to_string(j + 1) +
                                 " disagrees with the column lists (weight mismatch)");
    }
  }
  return LdpcCode(n, std::move(rows));
}

std::string format_alist(const LdpcCode& code) {
  std::ostringstream os;
  int max_col = 0;
  for (int i = 0; i < code.n(); ++i) max_col = std::max(max_col, code.var_degree(i));
  const int max_row = code.max_check_degree();
  os << code.n() << ' ' << code.m() << '\n' << max_col << ' ' << max_row << '\n';
  for (int i = 0; i < code.n(); ++i) os << code.var_degree(i) << (i + 1 < code.n() ? ' ' : '\n');
  for (int j = 0; j < code.m(); ++j) os << code.check_degree(j) << (j + 1 < code.m() ? ' ' : '\n');
  for (int i = 0; i < code.n(); ++i) {
    const auto& nb = code.var_neighbors(i);
    for (int k = 0; k < max_col; ++k) {
      os << (k < static_cast<int>(nb.size()) ? nb[k] + 1 : 0) << (k + 1 < max_col ? ' ' : '\n');
    }
  }
  for (int j = 0; j < code.m(); ++j) {
    const auto& nb = code.check_neighbors(j);
    for (int k = 0; k < max_row; ++k) {
      os << (k < static_cast<int>(nb.size()) ? nb[k] + 1 : 0) << (k + 1 < max_row ? ' ' : '\n');
    }
  }
  return os.str();
}

LdpcCode load_alist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alist file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_alist(buf.str());
}

void save_alist(const LdpcCode& code, const std::filesystem::path& path) {
  write_file_atomic(path, format_alist(code));
}

}  // namespace jlp
