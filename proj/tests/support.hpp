#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "minidil/intpoly.hpp"
#include "minidil/rational.hpp"
#include "minidil/specmat.hpp"

namespace testgen {

using minidil::BigInt;
using minidil::BigRational;
using minidil::IntPoly;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int num = 1, int den = 2) { return range(0, den - 1) < num; }

  IntPoly poly(int max_degree, std::int64_t bound) {
    const int d = static_cast<int>(range(0, max_degree));
    std::vector<BigInt> c;
    for (int i = 0; i <= d; ++i) c.emplace_back(static_cast<long>(range(-bound, bound)));
    if (c.back() == 0) c.back() = 1;
    return IntPoly(std::move(c));
  }

  IntPoly nonzero_poly(int max_degree, std::int64_t bound) {
    IntPoly p = poly(max_degree, bound);
    return p.is_zero() ? IntPoly::one() : p;
  }

  /// x^d - a_{d-1} x^{d-1} - ... - a_1 x - 1 with a_i in [0, bound], some a_i > 0.
  IntPoly class_shape(int min_degree, int max_degree, std::int64_t bound) {
    const int d = static_cast<int>(range(min_degree, max_degree));
    std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
    c[0] = -1;
    c[static_cast<std::size_t>(d)] = 1;
    bool any = false;
    for (int i = 1; i < d; ++i) {
      c[static_cast<std::size_t>(i)] = -range(0, bound);
      any = any || c[static_cast<std::size_t>(i)] != 0;
    }
    if (!any && d > 1) c[static_cast<std::size_t>(range(1, d - 1))] = -1;
    return IntPoly(std::move(c));
  }

  BigRational rational(std::int64_t num_bound, std::int64_t den_bound) {
    return minidil::make_rational(BigInt(static_cast<long>(range(-num_bound, num_bound))),
                                  BigInt(static_cast<long>(range(1, den_bound))));
  }

  minidil::NonnegMatrix matrix(std::size_t dim, int density_pct, long max_entry) {
    minidil::NonnegMatrix m = minidil::NonnegMatrix::zeros(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (range(0, 99) < density_pct) m.set(i, j, BigInt(static_cast<long>(range(1, max_entry))));
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

// Independent primitivity oracle: some power up to n^2 of the 0/1 pattern is
// entrywise positive.
inline bool brute_primitive(const minidil::NonnegMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<int>> a(n, std::vector<int>(n)), p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j) > 0;
  p = a;
  for (std::size_t e = 1; e <= n * n; ++e) {
    bool all = true;
    for (auto& r : p)
      for (int v : r) all = all && v;
    if (all) return true;
    std::vector<std::vector<int>> q(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (p[i][k])
          for (std::size_t j = 0; j < n; ++j) q[i][j] |= a[k][j];
    p = std::move(q);
  }
  return false;
}

}  // namespace testgen
