#pragma once

// Nonnegative integer matrices, companion digraphs, primitivity and
// Collatz-Wielandt spectral-radius brackets.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minidil/errors.hpp"
#include "minidil/intpoly.hpp"
#include "minidil/rational.hpp"

namespace minidil {

/// Square matrix with nonnegative integer entries, row-major.
class NonnegMatrix {
 public:
  NonnegMatrix(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw PreconditionError("matrix dimension must be positive");
    if (entries_.size() != dim_ * dim_) throw DimensionMismatch("entry count does not match dim*dim");
    for (const auto& e : entries_)
      if (sgn(e) < 0) throw PreconditionError("negative matrix entry " + e.get_str());
  }

  static NonnegMatrix zeros(std::size_t dim) { return NonnegMatrix(dim, std::vector<BigInt>(dim * dim, BigInt(0))); }

  static NonnegMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const std::size_t n = rows.size();
    std::vector<BigInt> e;
    e.reserve(n * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw DimensionMismatch("matrix rows must all have length dim");
      for (long v : r) e.emplace_back(v);
    }
    return NonnegMatrix(n, std::move(e));
  }

  std::size_t dim() const { return dim_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, BigInt v) {
    if (sgn(v) < 0) throw PreconditionError("negative matrix entry");
    entries_[i * dim_ + j] = std::move(v);
  }

  friend bool operator==(const NonnegMatrix& a, const NonnegMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(dim_, BigInt(0));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  // Positive-entry adjacency: edge i -> j iff m(i, j) > 0.
  std::vector<std::vector<std::size_t>> support() const {
    std::vector<std::vector<std::size_t>> adj(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (sgn((*this)(i, j)) > 0) adj[i].push_back(j);
    return adj;
  }

 private:
  std::size_t dim_;
  std::vector<BigInt> entries_;
};

/// Digraph of the transposed companion matrix of
/// x^d - a_{d-1} x^{d-1} - ... - a_1 x - 1: superdiagonal ones and bottom
/// row (1, a_1, ..., a_{d-1}).
class CompanionDigraph {
 public:
  explicit CompanionDigraph(std::vector<BigInt> bottom_row) : bottom_(std::move(bottom_row)) {
    if (bottom_.empty()) throw PreconditionError("companion digraph needs dim >= 1");
    if (bottom_[0] != 1) throw SignViolation("companion bottom row must start with 1");
    for (const auto& b : bottom_)
      if (sgn(b) < 0) throw SignViolation("companion bottom row must be nonnegative");
  }

  std::size_t dim() const { return bottom_.size(); }
  const std::vector<BigInt>& bottom_row() const { return bottom_; }

  NonnegMatrix materialize() const {
    const std::size_t d = dim();
    NonnegMatrix m = NonnegMatrix::zeros(d);
    for (std::size_t i = 0; i + 1 < d; ++i) m.set(i, i + 1, BigInt(1));
    for (std::size_t j = 0; j < d; ++j) m.set(d - 1, j, bottom_[j]);
    return m;
  }

  std::vector<std::vector<std::size_t>> support() const {
    const std::size_t d = dim();
    std::vector<std::vector<std::size_t>> adj(d);
    for (std::size_t i = 0; i + 1 < d; ++i) adj[i].push_back(i + 1);
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(bottom_[j]) > 0) adj[d - 1].push_back(j);
    return adj;
  }

 private:
  std::vector<BigInt> bottom_;
};

/// p must read x^d - a_{d-1}x^{d-1} - ... - a_1 x - 1 with every a_i >= 0.
inline CompanionDigraph companion_of(const IntPoly& p) {
  if (p.degree() < 1 || !p.is_monic()) throw SignViolation("companion form needs a monic polynomial of degree >= 1");
  if (p[0] != -1) throw SignViolation("constant coefficient must be -1 in " + to_string(p));
  const std::size_t d = static_cast<std::size_t>(p.degree());
  std::vector<BigInt> row(d);
  row[0] = 1;
  for (std::size_t i = 1; i < d; ++i) {
    if (sgn(p[i]) > 0) throw SignViolation("positive non-leading coefficient in " + to_string(p));
    row[i] = -p[i];
  }
  return CompanionDigraph(std::move(row));
}

struct PrimitivityReport {
  bool strongly_connected = false;
  std::optional<long> cycle_gcd;  // unset unless strongly connected with a cycle
  bool primitive = false;
};

inline nlohmann::json to_json(const PrimitivityReport& r) {
  return {{"strongly_connected", r.strongly_connected},
          {"cycle_gcd", r.cycle_gcd ? nlohmann::json(*r.cycle_gcd) : nlohmann::json(nullptr)},
          {"primitive", r.primitive}};
}

namespace detail {

// Iterative Tarjan; returns the number of strongly connected components.
inline std::size_t count_sccs(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, components = 0;
  std::vector<std::pair<std::size_t, std::size_t>> work;  // (vertex, next edge)
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, e] = work.back();
      if (e == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (e < adj[v].size()) {
        std::size_t w = adj[v][e++];
        if (index[w] == kUnvisited) {
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
        } while (w != v);
        ++components;
      }
      std::size_t finished = v;
      work.pop_back();
      if (!work.empty()) {
        std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return components;
}

inline PrimitivityReport primitivity_of_support(const std::vector<std::vector<std::size_t>>& adj) {
  PrimitivityReport rep;
  const std::size_t n = adj.size();
  std::size_t edges = 0;
  for (const auto& a : adj) edges += a.size();
  // A lone vertex without a loop has no closed walk and counts as reducible.
  if (edges == 0 || count_sccs(adj) != 1) return rep;
  rep.strongly_connected = true;

  std::vector<long> level(n, -1);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u])
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : adj[u]) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
  rep.cycle_gcd = g;
  rep.primitive = g == 1;
  return rep;
}

}  // namespace detail

/// Strong connectivity by SCC decomposition, period by BFS-layer gcd.
inline PrimitivityReport is_primitive(const NonnegMatrix& m) { return detail::primitivity_of_support(m.support()); }
inline PrimitivityReport is_primitive(const CompanionDigraph& g) { return detail::primitivity_of_support(g.support()); }

/// Closed form for companion digraphs: gcd of d and every d - j with a_j != 0.
inline long companion_cycle_gcd(const CompanionDigraph& g) {
  const long d = static_cast<long>(g.dim());
  long r = d;
  for (std::size_t j = 1; j < g.dim(); ++j)
    if (sgn(g.bottom_row()[j]) > 0) r = std::gcd(r, d - static_cast<long>(j));
  return r;
}

inline constexpr std::size_t kWielandtMaxDim = 64;

/// Independent primitivity oracle: m^((dim-1)^2 + 1) is entrywise positive.
/// Powers are taken on the zero/positive pattern, which is exact for
/// nonnegative matrices.
inline bool wielandt_oracle(const NonnegMatrix& m) {
  const std::size_t n = m.dim();
  if (n > kWielandtMaxDim) throw DimensionTooLarge("Wielandt oracle is capped at dim " + std::to_string(kWielandtMaxDim));
  using Pattern = std::vector<std::vector<bool>>;
  auto mul = [n](const Pattern& a, const Pattern& b) {
    Pattern c(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (b[k][j]) c[i][j] = true;
    return c;
  };
  Pattern base(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = sgn(m(i, j)) > 0;
  std::size_t e = (n - 1) * (n - 1) + 1;
  Pattern result;
  bool have = false;
  while (e > 0) {
    if (e & 1) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  for (const auto& row : result)
    for (bool b : row)
      if (!b) return false;
  return true;
}

/// Entrywise >= with at least one strict entry.
inline bool dominates(const NonnegMatrix& t, const NonnegMatrix& l) {
  if (t.dim() != l.dim()) throw DimensionMismatch("dominance needs equal dimensions");
  bool strict = false;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      if (t(i, j) < l(i, j)) return false;
      if (t(i, j) > l(i, j)) strict = true;
    }
  return strict;
}

// Companion matrices differ only in the bottom row.
inline bool dominates(const CompanionDigraph& t, const CompanionDigraph& l) {
  if (t.dim() != l.dim()) throw DimensionMismatch("dominance needs equal dimensions");
  bool strict = false;
  for (std::size_t j = 0; j < t.dim(); ++j) {
    if (t.bottom_row()[j] < l.bottom_row()[j]) return false;
    if (t.bottom_row()[j] > l.bottom_row()[j]) strict = true;
  }
  return strict;
}

struct SpectralBracket {
  BigRational lower;
  BigRational upper;
};

namespace detail {

inline SpectralBracket ratio_bracket(const NonnegMatrix& m, const std::vector<BigInt>& x) {
  std::vector<BigInt> y = m.apply(x);
  SpectralBracket b{BigRational(0), BigRational(0)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    BigRational r = make_rational(y[i], x[i]);
    if (i == 0 || r < b.lower) b.lower = r;
    if (i == 0 || r > b.upper) b.upper = r;
  }
  return b;
}

}  // namespace detail

/// min_i and max_i of (m x)_i / x_i for x = m^iterations * 1, exact.
/// Every m^t * 1 is strictly positive: a primitive matrix has no zero row.
inline SpectralBracket collatz_wielandt_bounds(const NonnegMatrix& m, unsigned iterations) {
  if (!is_primitive(m).primitive) throw NotPrimitive("Collatz-Wielandt bounds need a primitive matrix");
  std::vector<BigInt> x(m.dim(), BigInt(1));
  for (unsigned t = 0; t < iterations; ++t) x = m.apply(x);
  return detail::ratio_bracket(m, x);
}

/// Incremental Collatz-Wielandt refinement. Any positive vector gives a valid
/// bracket, so the iterate is rescaled to bounded size and the reported
/// bracket is the running intersection.
class CollatzWielandt {
 public:
  explicit CollatzWielandt(NonnegMatrix m, std::size_t max_bits = 512) : m_(std::move(m)), max_bits_(max_bits) {
    if (!is_primitive(m_).primitive) throw NotPrimitive("Collatz-Wielandt bounds need a primitive matrix");
    x_.assign(m_.dim(), BigInt(1));
    bracket_ = detail::ratio_bracket(m_, x_);
  }

  void step() {
    x_ = m_.apply(x_);
    rescale();
    SpectralBracket b = detail::ratio_bracket(m_, x_);
    if (b.lower > bracket_.lower) bracket_.lower = b.lower;
    if (b.upper < bracket_.upper) bracket_.upper = b.upper;
    ++steps_;
  }

  const SpectralBracket& bracket() const { return bracket_; }
  unsigned steps() const { return steps_; }

 private:
  void rescale() {
    std::size_t bits = 0;
    for (const auto& v : x_) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    if (bits <= max_bits_) return;
    const mp_bitcnt_t shift = bits - max_bits_ / 2;
    for (auto& v : x_) {
      mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), shift);
      if (v == 0) v = 1;
    }
  }

  NonnegMatrix m_;
  std::size_t max_bits_;
  std::vector<BigInt> x_;
  SpectralBracket bracket_;
  unsigned steps_ = 0;
};

inline nlohmann::json to_json(const NonnegMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_int64(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"rows", std::move(rows)}};
}

inline NonnegMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) throw ParseError("matrix JSON needs dim and rows");
  const auto dim = j.at("dim").get<std::size_t>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != dim) throw ParseError("matrix JSON rows must have length dim");
  std::vector<BigInt> e;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != dim) throw ParseError("matrix JSON row must have length dim");
    for (const auto& v : r) {
      if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
      e.emplace_back(static_cast<long>(v.get<std::int64_t>()));
    }
  }
  return NonnegMatrix(dim, std::move(e));
}

}  // namespace minidil
