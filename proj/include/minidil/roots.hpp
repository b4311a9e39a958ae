#pragma once

// Certified enclosures of the largest real root, exact comparison of
// enclosures, and floating-point root-modulus profiles.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minidil/errors.hpp"
#include "minidil/intpoly.hpp"
#include "minidil/polyalgo.hpp"
#include "minidil/rational.hpp"

namespace minidil {

/// 1 + max |a_i / a_d| over the non-leading coefficients; every root is
/// strictly smaller in modulus.
inline BigRational cauchy_bound(const IntPoly& p) {
  if (p.degree() < 1) throw PreconditionError("Cauchy bound needs degree >= 1");
  BigRational m(0);
  const BigInt lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    BigRational r = make_rational(abs(p[static_cast<std::size_t>(i)]), lead);
    if (r > m) m = r;
  }
  return BigRational(1) + m;
}

inline const BigRational& default_tolerance() {
  static const BigRational tol = pow10_inverse(12);
  return tol;
}

// Width below which compare() falls back to the exact gcd test.
inline const BigRational& exact_fallback_width() {
  static const BigRational w = pow10_inverse(30);
  return w;
}

/// Sign-certified bracket (lo, hi) around the largest real root of `poly`.
///
/// Signs are certified on the working polynomial: the square-free part of
/// `poly` with any factor (x - 1) removed. On (lo, hi) it has exactly one,
/// simple root, with working(lo) < 0 < working(hi) and no root above hi.
class RootEnclosure {
 public:
  const IntPoly& poly() const { return poly_; }
  const IntPoly& working() const { return work_; }
  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / 2; }

  /// One split step; keeps both sign certificates.
  void bisect() {
    BigRational mid = split_point(work_, lo_, hi_);
    if (sign_at(work_, mid) < 0)
      lo_ = std::move(mid);
    else
      hi_ = std::move(mid);
  }

  void refine(const BigRational& tol) {
    if (sgn(tol) <= 0) throw PreconditionError("tolerance must be positive");
    while (width() > tol) bisect();
  }

  /// Re-checks the certificate from scratch; throws InvariantViolation.
  void check_invariants() const {
    if (lo_ < 1) throw InvariantViolation("enclosure lower end below 1");
    if (!(lo_ < hi_)) throw InvariantViolation("empty enclosure");
    if (sign_at(work_, lo_) >= 0) throw InvariantViolation("enclosure lower sign certificate failed");
    if (sign_at(work_, hi_) <= 0) throw InvariantViolation("enclosure upper sign certificate failed");
    if (!exact_divide(primitive_part(poly_), work_)) throw InvariantViolation("working polynomial does not divide poly");
    if (SturmSequence(work_).count_roots(lo_, hi_) != 1) throw InvariantViolation("enclosure does not isolate one root");
    if (count_roots_closed(work_, hi_, cauchy_bound(poly_)) != 0)
      throw InvariantViolation("a root lies above the enclosure");
  }

  // Picks a split point in (lo, hi) where p does not vanish.
  static BigRational split_point(const IntPoly& p, const BigRational& lo, const BigRational& hi) {
    for (long den = 2;; ++den)
      for (long num = 1; num < den; ++num) {
        BigRational t = lo + (hi - lo) * BigRational(num, den);
        if (sign_at(p, t) != 0) return t;
      }
  }

 private:
  RootEnclosure(IntPoly poly, IntPoly work, BigRational lo, BigRational hi)
      : poly_(std::move(poly)), work_(std::move(work)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  friend RootEnclosure largest_root_enclosure(const IntPoly& p, const BigRational& tol);
  friend RootEnclosure enclosure_from_json(const nlohmann::json& j);

  IntPoly poly_;
  IntPoly work_;
  BigRational lo_;
  BigRational hi_;
};

/// Exact bisection on [1, cauchy_bound(p)].
///
/// When p(1) == 0 the factor (x - 1) is divided out first. If the square-free
/// working polynomial is not certified unique above 1 by Descartes' rule, a
/// Sturm sequence isolates the largest root before bisection.
inline RootEnclosure largest_root_enclosure(const IntPoly& p, const BigRational& tol) {
  if (!p.is_monic() || p.degree() < 1) throw PreconditionError("largest_root_enclosure needs a monic polynomial, got " + to_string(p));
  if (sgn(tol) <= 0) throw PreconditionError("tolerance must be positive");

  const BigRational one(1);
  IntPoly work = (sign_variations(p) == 1) ? p : squarefree_part(p);
  const IntPoly x_minus_1 = IntPoly::ascending({-1, 1});
  while (work.degree() >= 1 && sign_at(work, one) == 0) work = divide_or_throw(work, x_minus_1);
  if (work.degree() < 1) throw NoSignChange("no real root above 1 in " + to_string(p));

  BigRational lo = one;
  BigRational hi = cauchy_bound(p);
  const bool descartes_unique = sign_variations(work) == 1 && sign_at(work, one) < 0;
  if (!descartes_unique) {
    SturmSequence sturm(work);
    if (sturm.count_roots(lo, hi) == 0) throw NoSignChange("no real root above 1 in " + to_string(p));
    while (sturm.count_roots(lo, hi) > 1) {
      BigRational mid = RootEnclosure::split_point(work, lo, hi);
      if (sturm.count_roots(mid, hi) >= 1)
        lo = std::move(mid);
      else
        hi = std::move(mid);
    }
    if (sign_at(work, lo) >= 0) throw NoSignChange("largest root above 1 does not change sign in " + to_string(p));
  }

  RootEnclosure e(p, std::move(work), std::move(lo), std::move(hi));
  e.refine(tol);
  return e;
}

inline RootEnclosure largest_root_enclosure(const IntPoly& p) { return largest_root_enclosure(p, default_tolerance()); }

inline RootEnclosure refine(RootEnclosure e, const BigRational& tol) {
  e.refine(tol);
  return e;
}

enum class RootOrder { Less, Greater, SharedRoot };

inline const char* to_string(RootOrder o) {
  switch (o) {
    case RootOrder::Less: return "Less";
    case RootOrder::Greater: return "Greater";
    case RootOrder::SharedRoot: return "SharedRoot";
  }
  return "?";
}

/// True iff the two enclosed roots are the same algebraic number: the gcd of
/// the working polynomials has a root in the intersection of both brackets.
inline bool shares_enclosed_root(const RootEnclosure& a, const RootEnclosure& b) {
  IntPoly g = gcd(a.working(), b.working());
  if (g.degree() < 1) return false;
  const BigRational& lo = a.lo() > b.lo() ? a.lo() : b.lo();
  const BigRational& hi = a.hi() < b.hi() ? a.hi() : b.hi();
  if (hi < lo) return false;
  return count_roots_closed(g, lo, hi) >= 1;
}

/// Refines both enclosures (in place) until disjoint. Below the exact
/// fallback width a shared root is detected exactly; otherwise refinement
/// continues, which terminates because distinct roots separate.
inline RootOrder compare(RootEnclosure& a, RootEnclosure& b) {
  if (a.working() == b.working()) return RootOrder::SharedRoot;
  bool exact_done = false;
  while (true) {
    if (a.hi() < b.lo()) return RootOrder::Less;
    if (b.hi() < a.lo()) return RootOrder::Greater;
    if (!exact_done && a.width() <= exact_fallback_width() && b.width() <= exact_fallback_width()) {
      exact_done = true;
      if (shares_enclosed_root(a, b)) return RootOrder::SharedRoot;
    }
    if (a.width() >= b.width())
      a.bisect();
    else
      b.bisect();
  }
}

inline nlohmann::json to_json(const RootEnclosure& e) {
  return {{"poly", to_json(e.poly())},
          {"lo", to_fraction_string(e.lo())},
          {"hi", to_fraction_string(e.hi())},
          {"approx", to_decimal_string(e.midpoint(), 15)}};
}

/// Parses the enclosure JSON form and re-verifies its certificate.
inline RootEnclosure enclosure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("poly") || !j.contains("lo") || !j.contains("hi"))
    throw ParseError("enclosure JSON needs poly, lo and hi");
  IntPoly p = poly_from_json(j.at("poly"));
  RootEnclosure fresh = largest_root_enclosure(p, BigRational(1));
  RootEnclosure e(p, fresh.working(), parse_rational(j.at("lo").get<std::string>()),
                  parse_rational(j.at("hi").get<std::string>()));
  e.check_invariants();
  return e;
}

// ---------------------------------------------------------------------------
// Non-certified complex root moduli.

struct RootModulusProfile {
  std::vector<std::complex<long double>> roots;
  std::vector<long double> moduli;  // |roots[i]|
  std::vector<long double> radii;   // inclusion radius around roots[i]
  bool converged = false;
  bool certified = false;  // always false: floating-point evidence only
  unsigned iterations = 0;
};

namespace detail {

struct HornerResult {
  std::complex<long double> value;
  std::complex<long double> slope;
  long double abs_bound;  // sum |c_i| |z|^i, for rounding error
};

inline HornerResult horner(const std::vector<long double>& c, std::complex<long double> z) {
  std::complex<long double> v = c.back(), d = 0;
  long double bound = std::fabs(c.back());
  const long double az = std::abs(z);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
    bound = bound * az + std::fabs(c[i]);
  }
  return {v, d, bound};
}

}  // namespace detail

/// All complex roots by Aberth-Ehrlich iteration in long double.
///
/// radii[i] = n (|p(z_i)| + rounding) / |a_n prod_{j != i} (z_i - z_j)|; the
/// union of these disks contains every root (Braess-Hadeler inclusion).
inline RootModulusProfile root_modulus_profile(const IntPoly& p, unsigned max_iterations = 2000) {
  if (p.degree() < 1) throw PreconditionError("root profile needs degree >= 1");
  const std::size_t n = static_cast<std::size_t>(p.degree());
  std::vector<long double> c;
  for (const auto& v : p.coefficients()) c.push_back(std::stold(v.get_str()));

  using cplx = std::complex<long double>;
  const long double eps = std::numeric_limits<long double>::epsilon();
  long double r0 = std::pow(std::fabs(c.front() == 0 ? 1.0L : c.front() / c.back()), 1.0L / static_cast<long double>(n));
  if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1;
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(n) + 0.7L;
    z[k] = std::polar(r0 * (1.0L + 0.05L * static_cast<long double>(k % 3)), angle);
  }

  RootModulusProfile prof;
  for (unsigned it = 0; it < max_iterations; ++it) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto h = detail::horner(c, z[k]);
      if (h.value == cplx(0)) continue;
      cplx ratio = h.slope == cplx(0) ? cplx(1e-3L) : h.value / h.slope;
      cplx sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      cplx w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    prof.iterations = it + 1;
    if (worst <= 64 * eps) {
      prof.converged = true;
      break;
    }
  }

  const long double gamma = 4 * static_cast<long double>(n) * eps;
  for (std::size_t k = 0; k < n; ++k) {
    auto h = detail::horner(c, z[k]);
    long double denom = std::fabs(c.back());
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) denom *= std::abs(z[k] - z[j]);
    long double radius = denom > 0 ? static_cast<long double>(n) * (std::abs(h.value) + gamma * h.abs_bound) / denom
                                   : std::numeric_limits<long double>::infinity();
    prof.roots.push_back(z[k]);
    prof.moduli.push_back(std::abs(z[k]));
    prof.radii.push_back(radius);
  }
  return prof;
}

inline nlohmann::json to_json(const RootModulusProfile& prof) {
  nlohmann::json roots = nlohmann::json::array();
  for (std::size_t i = 0; i < prof.roots.size(); ++i)
    roots.push_back({{"re", static_cast<double>(prof.roots[i].real())},
                     {"im", static_cast<double>(prof.roots[i].imag())},
                     {"modulus", static_cast<double>(prof.moduli[i])},
                     {"radius", static_cast<double>(prof.radii[i])}});
  return {{"roots", roots}, {"converged", prof.converged}, {"certified", prof.certified}};
}

}  // namespace minidil
