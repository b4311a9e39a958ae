#pragma once

// Remainder sequences over Z: subresultant gcd, square-free part, Descartes
// sign variations and Sturm root counting.

#include <cstddef>
#include <utility>
#include <vector>

#include "minidil/intpoly.hpp"

namespace minidil {

/// lc(b)^(deg a - deg b + 1) * a  mod  b, computed without fractions.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw PreconditionError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r(a.coefficients().begin(), a.coefficients().end());
  auto bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const BigInt& lb = bc.back();
  // Exactly deg a - deg b + 1 steps, each multiplying by lc(b).
  for (std::size_t top = r.size(); top-- > db;) {
    BigInt f = r[top];
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[top - db + j] -= f * bc[j];
  }
  r.resize(db);
  return IntPoly(std::move(r));
}

/// Greatest common divisor over Z via the subresultant remainder sequence.
/// Result is primitive with a positive leading coefficient (times the gcd of
/// the contents).
inline IntPoly gcd(IntPoly u, IntPoly v) {
  if (u.is_zero()) return primitive_part(v);
  if (v.is_zero()) return primitive_part(u);
  if (u.degree() < v.degree()) std::swap(u, v);
  BigInt cu = content(u), cv = content(v), d;
  mpz_gcd(d.get_mpz_t(), cu.get_mpz_t(), cv.get_mpz_t());
  u = primitive_part(u);
  v = primitive_part(v);
  BigInt g(1), h(1);
  while (true) {
    const int delta = u.degree() - v.degree();
    IntPoly r = pseudo_remainder(u, v);
    if (r.is_zero()) return d * primitive_part(v);
    if (r.degree() == 0) return IntPoly::constant(d);
    u = std::move(v);
    BigInt divisor = g * pow_int(h, static_cast<unsigned long>(delta));
    std::vector<BigInt> rc(r.coefficients().begin(), r.coefficients().end());
    for (auto& c : rc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    v = IntPoly(std::move(rc));
    g = u.leading();
    if (delta == 0) continue;
    // h <- g^delta / h^(delta - 1)
    BigInt num = pow_int(g, static_cast<unsigned long>(delta));
    BigInt den = pow_int(h, static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
}

/// p / gcd(p, p'), primitive with positive leading coefficient.
inline IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() < 1) return primitive_part(p);
  IntPoly g = gcd(p, derivative(p));
  if (g.degree() < 1) return primitive_part(p);
  return primitive_part(divide_or_throw(primitive_part(p), g));
}

/// Sign changes in the coefficient sequence, zeros skipped (Descartes).
inline int sign_variations(const IntPoly& p) {
  int changes = 0, last = 0;
  for (const auto& c : p.coefficients()) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Sturm sequence of a polynomial; counts distinct real roots on intervals.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p) {
    if (p.degree() < 1) {
      chain_.push_back(p);
      return;
    }
    chain_.push_back(primitive_part(p));
    chain_.push_back(primitive_part(derivative(p)));
    while (chain_.back().degree() > 0) {
      const IntPoly& a = chain_[chain_.size() - 2];
      const IntPoly& b = chain_.back();
      IntPoly r = pseudo_remainder(a, b);
      if (r.is_zero()) break;
      // prem carries lc(b)^(delta+1); undo its sign, then negate.
      const int delta = a.degree() - b.degree();
      bool flip = sgn(b.leading()) < 0 && (delta + 1) % 2 != 0;
      IntPoly next = flip ? r : -r;
      BigInt c = content(next);
      std::vector<BigInt> v(next.coefficients().begin(), next.coefficients().end());
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
      chain_.emplace_back(std::move(v));
    }
    // A nonconstant tail is gcd(p, p'); dividing it out keeps variation counts
    // valid at multiple roots.
    if (chain_.back().degree() > 0) {
      const IntPoly g = chain_.back();
      for (auto& q : chain_) q = divide_or_throw(q, g);
    }
  }

  int variations_at(const BigRational& x) const {
    int changes = 0, last = 0;
    for (const auto& q : chain_) {
      int s = sign_at(q, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Distinct real roots in (a, b]; requires a < b.
  int count_roots(const BigRational& a, const BigRational& b) const {
    return variations_at(a) - variations_at(b);
  }

  std::size_t length() const { return chain_.size(); }

 private:
  std::vector<IntPoly> chain_;
};

/// Distinct real roots of p in the closed interval [a, b].
inline int count_roots_closed(const IntPoly& p, const BigRational& a, const BigRational& b) {
  if (p.degree() < 1 || b < a) return 0;
  IntPoly q = p;
  int at_a = 0;
  if (sign_at(q, a) == 0) {
    // Strip every (den*x - num) factor so the half-open count is exact.
    IntPoly linear = IntPoly(std::vector<BigInt>{-a.get_num(), a.get_den()});
    while (sign_at(q, a) == 0) q = divide_or_throw(q, linear);
    at_a = 1;
  }
  if (q.degree() < 1 || !(a < b)) return at_a;
  return at_a + SturmSequence(q).count_roots(a, b);
}

}  // namespace minidil
