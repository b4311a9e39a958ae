#pragma once

// Constraint classes of class polynomials x^d - a_{d-1}x^{d-1} - ... - a_1 x - 1:
// parity admissibility, candidate enumeration with minimal-representative
// pruning, the LS1/LS2 property checkers and the S-family multipliers.

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minidil/errors.hpp"
#include "minidil/intpoly.hpp"
#include "minidil/polyalgo.hpp"
#include "minidil/roots.hpp"
#include "minidil/specmat.hpp"

namespace minidil {

enum class Family { N, S };

inline const char* to_string(Family f) { return f == Family::N ? "N" : "S"; }

inline Family parse_family(const std::string& s) {
  if (s == "N") return Family::N;
  if (s == "S") return Family::S;
  throw ParseError("family must be N or S, got '" + s + "'");
}

/// Family N: degree 2k-1, the nonorientable genus-2k class.
/// Family S: degree 4k, products p(x) m(x) for the orientable genus 2k-1 class.
struct ClassSpec {
  Family family = Family::N;
  int k = 2;
  int coeff_bound = 3;
  bool ls_filter = true;  // apply the LS1 / LS2 property checkers as class filters

  int degree() const { return family == Family::N ? 2 * k - 1 : 4 * k; }
  int genus() const { return family == Family::N ? 2 * k : 2 * k - 1; }

  void validate() const {
    if (k < 2) throw InvalidSpec("k must be >= 2");
    if (coeff_bound < 2) throw InvalidSpec("coeff_bound must be >= 2");
  }

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

inline nlohmann::json to_json(const ClassSpec& s) {
  return {{"family", to_string(s.family)}, {"k", s.k}, {"coeff_bound", s.coeff_bound}, {"ls_filter", s.ls_filter}};
}

inline ClassSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("k")) throw ParseError("ClassSpec JSON needs family and k");
  ClassSpec s;
  s.family = parse_family(j.at("family").get<std::string>());
  s.k = j.at("k").get<int>();
  s.coeff_bound = j.value("coeff_bound", 3);
  s.ls_filter = j.value("ls_filter", true);
  s.validate();
  return s;
}

/// Nonnegative coefficients a_1 .. a_{d-1} of x^d - sum a_i x^i - 1.
struct CandidateVector {
  std::vector<int> a;  // a[i - 1] holds a_i

  int degree() const { return static_cast<int>(a.size()) + 1; }
  int at(int i) const { return a[static_cast<std::size_t>(i - 1)]; }

  IntPoly poly() const {
    std::vector<BigInt> c(a.size() + 2);
    c.front() = -1;
    for (std::size_t i = 0; i < a.size(); ++i) c[i + 1] = -a[i];
    c.back() = 1;
    return IntPoly(std::move(c));
  }

  CompanionDigraph companion() const {
    std::vector<BigInt> row(a.size() + 1);
    row[0] = 1;
    for (std::size_t i = 0; i < a.size(); ++i) row[i + 1] = a[i];
    return CompanionDigraph(std::move(row));
  }

  friend auto operator<=>(const CandidateVector&, const CandidateVector&) = default;
};

inline CandidateVector candidate_from_poly(const IntPoly& p) {
  companion_of(p);  // sign checks
  CandidateVector v;
  for (int i = 1; i < p.degree(); ++i) v.a.push_back(static_cast<int>(BigInt(-p[static_cast<std::size_t>(i)]).get_si()));
  return v;
}

/// a_i == a_{d-i} (mod 2) for all i.
inline bool parity_symmetric(const CandidateVector& v) {
  const int d = v.degree();
  for (int i = 1; i < d; ++i)
    if ((v.at(i) & 1) != (v.at(d - i) & 1)) return false;
  return true;
}

/// Some a_i != 0 with gcd(d, d - i) == 1.
inline bool has_primitivity_seed(const CandidateVector& v) {
  const int d = v.degree();
  for (int i = 1; i < d; ++i)
    if (v.at(i) != 0 && std::gcd(d, d - i) == 1) return true;
  return false;
}

inline bool parity_admissible(const CandidateVector& v, const ClassSpec& spec) {
  if (v.degree() != spec.degree())
    throw LengthMismatch("candidate has " + std::to_string(v.a.size()) + " coefficients, class needs " +
                         std::to_string(spec.degree() - 1));
  return parity_symmetric(v) && has_primitivity_seed(v);
}

inline bool companion_primitive(const CandidateVector& v) { return is_primitive(v.companion()).primitive; }

// The enumeration filter: parity symmetry plus the true primitivity test.
inline bool in_raw_class(const CandidateVector& v) { return parity_symmetric(v) && companion_primitive(v); }

/// No single reduction a_i -> a_i - 2 stays inside the raw class. Reductions
/// only shrink the support, and both filters are monotone in the support, so
/// single steps decide Pareto-minimality.
inline bool is_minimal_representative(const CandidateVector& v) {
  for (std::size_t i = 0; i < v.a.size(); ++i) {
    if (v.a[i] < 2) continue;
    CandidateVector w = v;
    w.a[i] -= 2;
    if (in_raw_class(w)) return false;
  }
  return true;
}

enum class Enumeration { MinimalRepresentatives, Raw };

/// Deterministic, lexicographically ordered candidate list.
///
/// Raw: every vector of the box {0..coeff_bound}^{d-1} in the raw class.
/// MinimalRepresentatives: the raw-class vectors that are Pareto-minimal
/// under parity-preserving reduction; their entries lie in {0, 1, 2}.
inline std::vector<CandidateVector> enumerate_candidates(const ClassSpec& spec,
                                                         Enumeration mode = Enumeration::MinimalRepresentatives) {
  spec.validate();
  const int d = spec.degree();
  const std::size_t len = static_cast<std::size_t>(d - 1);
  std::vector<CandidateVector> out;

  if (mode == Enumeration::Raw) {
    CandidateVector v{std::vector<int>(len, 0)};
    while (true) {
      if (in_raw_class(v)) out.push_back(v);
      std::size_t pos = len;
      while (pos > 0 && v.a[pos - 1] == spec.coeff_bound) v.a[--pos] = 0;
      if (pos == 0) break;
      ++v.a[pos - 1];
    }
    return out;
  }

  // Each mirror pair (i, d - i) independently takes one of the parity-matched
  // values with entries in {0, 1, 2}; a self-paired middle index takes 0, 1, 2.
  using Choice = std::pair<int, int>;
  const std::vector<Choice> pair_choices = {{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}};
  std::vector<std::pair<int, int>> slots;  // (i, d - i) with i <= d - i
  for (int i = 1; 2 * i <= d; ++i)
    if (i < d) slots.emplace_back(i, d - i);
  std::vector<std::size_t> idx(slots.size(), 0);
  auto choices_for = [&](std::size_t s) -> std::size_t {
    return slots[s].first == slots[s].second ? 3 : pair_choices.size();
  };
  while (true) {
    CandidateVector v{std::vector<int>(len, 0)};
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [i, j] = slots[s];
      if (i == j) {
        v.a[static_cast<std::size_t>(i - 1)] = static_cast<int>(idx[s]);
      } else {
        v.a[static_cast<std::size_t>(i - 1)] = pair_choices[idx[s]].first;
        v.a[static_cast<std::size_t>(j - 1)] = pair_choices[idx[s]].second;
      }
    }
    if (in_raw_class(v) && is_minimal_representative(v)) out.push_back(std::move(v));
    std::size_t s = 0;
    while (s < slots.size() && ++idx[s] == choices_for(s)) idx[s++] = 0;
    if (s == slots.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Raw-class vectors without a single seed index: primitive only through a
/// combination of cycle lengths.
inline std::vector<CandidateVector> seed_divergent(const std::vector<CandidateVector>& candidates) {
  std::vector<CandidateVector> out;
  for (const auto& v : candidates)
    if (!has_primitivity_seed(v)) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Property checkers.

enum class Verdict { Pass, Fail, Undetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

struct PropertyItem {
  std::string id;
  Verdict verdict = Verdict::Undetermined;
  bool certified = true;
  std::string detail;
};

struct PropertyReport {
  std::string proposition;  // "LS1" or "LS2"
  int genus = 0;
  std::vector<PropertyItem> items;

  bool any_fail() const {
    return std::any_of(items.begin(), items.end(), [](const auto& i) { return i.verdict == Verdict::Fail; });
  }
  bool all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.verdict == Verdict::Pass; });
  }
  Verdict overall() const { return any_fail() ? Verdict::Fail : all_pass() ? Verdict::Pass : Verdict::Undetermined; }
  const PropertyItem& item(const std::string& id) const {
    for (const auto& i : items)
      if (i.id == id) return i;
    throw PreconditionError("no property item '" + id + "'");
  }
};

inline nlohmann::json to_json(const PropertyReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : r.items)
    items.push_back({{"id", i.id}, {"verdict", to_string(i.verdict)}, {"certified", i.certified}, {"detail", i.detail}});
  return {{"proposition", r.proposition}, {"genus", r.genus}, {"overall", to_string(r.overall())}, {"items", items}};
}

namespace detail {

inline PropertyItem exact_item(std::string id, bool ok, std::string detail = {}) {
  return {std::move(id), ok ? Verdict::Pass : Verdict::Fail, true, std::move(detail)};
}

// Whether sign * lambda is exactly a root of q, lambda being the root in e.
inline bool is_exact_root_at(const IntPoly& q, const RootEnclosure& e) {
  IntPoly g = gcd(q, e.working());
  return g.degree() >= 1 && count_roots_closed(g, e.lo(), e.hi()) >= 1;
}

/// Moduli of all roots other than lambda (and -1/lambda when asked) lie in
/// the open interval (1/lambda, lambda). Floating-point profile decides clear
/// cases; roots sitting on a boundary at +-1/lambda or -lambda are settled
/// exactly through a gcd with the reversed / reflected polynomial.
inline PropertyItem root_location_item(const IntPoly& p, bool exclude_negative_inverse) {
  PropertyItem item{"root_location", Verdict::Undetermined, false, {}};
  if (!p.is_monic() || p.degree() < 1) {
    item.detail = "not monic";
    return item;
  }
  std::optional<RootEnclosure> lam;
  try {
    lam = largest_root_enclosure(p, pow10_inverse(24));
  } catch (const NoSignChange&) {
    item.verdict = Verdict::Fail;
    item.certified = true;
    item.detail = "no real root above 1";
    return item;
  }
  const RootModulusProfile prof = root_modulus_profile(p);
  if (!prof.converged) {
    item.detail = "root profile did not converge";
    return item;
  }
  const long double lf = to_long_double(lam->midpoint());
  const long double inv = 1.0L / lf;
  constexpr long double kMargin = 1e-12L;
  const std::size_t n = prof.roots.size();

  auto nearest = [&](std::complex<long double> target, std::optional<std::size_t> skip) {
    std::size_t best = n;
    long double dist = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (skip && *skip == i) continue;
      long double dd = std::abs(prof.roots[i] - target);
      if (best == n || dd < dist) best = i, dist = dd;
    }
    return std::pair{best, dist};
  };
  auto [li, ldist] = nearest({lf, 0}, std::nullopt);
  if (li == n || ldist > prof.radii[li] + kMargin) {
    item.detail = "profile does not resolve the largest root";
    return item;
  }
  std::optional<std::size_t> mi;
  if (exclude_negative_inverse) {
    auto [m, mdist] = nearest({-inv, 0}, li);
    if (m == n || mdist > prof.radii[m] + kMargin) {
      item.detail = "no root at -1/lambda";
      return item;
    }
    mi = m;
  }

  bool undetermined = false;
  std::string notes;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == li || (mi && *mi == i)) continue;
    const long double m = prof.moduli[i], r = prof.radii[i];
    if (m - r > inv + kMargin && m + r < lf - kMargin) continue;
    if (m + r < inv - kMargin || m - r > lf + kMargin) {
      item.verdict = Verdict::Fail;
      item.detail = "root modulus " + std::to_string(static_cast<double>(m)) + " outside (1/lambda, lambda)";
      return item;
    }
    const bool real = std::fabs(prof.roots[i].imag()) <= r + kMargin;
    const bool positive = prof.roots[i].real() > 0;
    if (real && std::fabs(m - inv) <= r + kMargin) {
      // x^d p(+-1/x) vanishes at lambda iff +-1/lambda is a root of p.
      IntPoly mirrored = positive ? reversal(p) : reversal(reflect(p));
      if (is_exact_root_at(mirrored, *lam)) {
        item.verdict = Verdict::Fail;
        item.certified = true;
        item.detail = std::string("exact root at ") + (positive ? "" : "-") + "1/lambda";
        return item;
      }
    } else if (real && !positive && std::fabs(m - lf) <= r + kMargin) {
      if (is_exact_root_at(reflect(p), *lam)) {
        item.verdict = Verdict::Fail;
        item.certified = true;
        item.detail = "exact root at -lambda";
        return item;
      }
    }
    undetermined = true;
    notes = "root modulus " + std::to_string(static_cast<double>(m)) + " too close to a boundary";
  }
  item.verdict = undetermined ? Verdict::Undetermined : Verdict::Pass;
  item.detail = undetermined ? notes : "lambda ~ " + to_decimal_string(lam->midpoint(), 12);
  return item;
}

}  // namespace detail

/// Items of LS1 for a candidate of the nonorientable genus-g class
/// (g defaults to degree + 1).
inline PropertyReport check_ls1(const IntPoly& p, std::optional<int> genus = std::nullopt) {
  PropertyReport r;
  r.proposition = "LS1";
  r.genus = genus.value_or(p.degree() + 1);
  r.items.push_back(detail::exact_item("degree", p.degree() == r.genus - 1,
                                       "deg = " + std::to_string(p.degree()) + ", g - 1 = " + std::to_string(r.genus - 1)));
  r.items.push_back(detail::exact_item("monic_unit_constant", p.is_monic() && abs(p.constant_term()) == 1));
  r.items.push_back(detail::root_location_item(p, false));
  r.items.push_back(detail::exact_item("not_reciprocal", !is_reciprocal(p) && !is_antireciprocal(p)));
  r.items.push_back(detail::exact_item("reciprocal_mod2", is_reciprocal_mod2(p)));
  return r;
}

/// Items of LS2 for the orientation-reversing genus-g class (g defaults to
/// degree / 2; the symmetry item always uses degree / 2).
inline PropertyReport check_ls2(const IntPoly& p, std::optional<int> genus = std::nullopt) {
  PropertyReport r;
  r.proposition = "LS2";
  r.genus = genus.value_or(p.degree() / 2);
  const int g = r.genus;
  r.items.push_back(detail::exact_item("degree", p.degree() == 2 * g,
                                       "deg = " + std::to_string(p.degree()) + ", 2g = " + std::to_string(2 * g)));
  r.items.push_back(detail::exact_item("monic_constant", p.is_monic() && p.constant_term() == (g % 2 == 0 ? 1 : -1)));
  bool symmetric = p.degree() >= 0 && p.degree() % 2 == 0 && satisfies_ls2_symmetry(p);
  r.items.push_back(detail::exact_item("symmetry", symmetric));
  if (symmetric) {
    r.items.push_back(detail::root_location_item(p, true));
  } else {
    r.items.push_back({"root_location", Verdict::Undetermined, false, "skipped: symmetry fails"});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Multipliers of the S family.

struct Multiplier {
  std::string name;
  IntPoly poly;
};

/// Fixed order: (x-1)^2, (x+1)^2, x^2-1, x^2+1, x^2-x+1, x^2+x+1.
inline const std::vector<Multiplier>& multipliers() {
  static const std::vector<Multiplier> m = {
      {"(x-1)^2", IntPoly::descending({1, -2, 1})}, {"(x+1)^2", IntPoly::descending({1, 2, 1})},
      {"x^2-1", IntPoly::descending({1, 0, -1})},   {"x^2+1", IntPoly::descending({1, 0, 1})},
      {"x^2-x+1", IntPoly::descending({1, -1, 1})}, {"x^2+x+1", IntPoly::descending({1, 1, 1})},
  };
  return m;
}

inline IntPoly reduce_mod2(const IntPoly& p) {
  std::vector<BigInt> c;
  for (const auto& v : p.coefficients()) c.emplace_back(is_odd(v) ? 1 : 0);
  return IntPoly(std::move(c));
}

struct MultiplierProduct {
  std::string multiplier;
  IntPoly product;
  IntPoly multiplier_mod2;  // x^2 + 1 or x^2 + x + 1
};

inline std::vector<MultiplierProduct> multiplier_products(const IntPoly& p) {
  std::vector<MultiplierProduct> out;
  for (const auto& m : multipliers()) out.push_back({m.name, p * m.poly, reduce_mod2(m.poly)});
  return out;
}

// ---------------------------------------------------------------------------
// Class membership.

struct QuotientCheck {
  std::string multiplier;
  IntPoly quotient;
  PropertyReport ls2;
};

struct Membership {
  bool member = true;
  Verdict verdict = Verdict::Pass;
  std::string reason;
  std::optional<PropertyReport> ls1;  // family N
  std::vector<QuotientCheck> quotients;  // family S: every multiplier that divides exactly
};

inline std::vector<QuotientCheck> quotient_checks(const IntPoly& product, int genus) {
  std::vector<QuotientCheck> out;
  for (const auto& m : multipliers())
    if (auto q = exact_divide(product, m.poly)) out.push_back({m.name, *q, check_ls2(*q, genus)});
  return out;
}

/// Whether the candidate survives the LS property filters. Undetermined
/// verdicts keep the candidate, so the class can only grow.
inline Membership class_membership(const CandidateVector& v, const ClassSpec& spec) {
  Membership r;
  if (!spec.ls_filter) {
    r.reason = "filters disabled";
    return r;
  }
  const IntPoly p = v.poly();
  if (spec.family == Family::N) {
    r.ls1 = check_ls1(p, spec.genus());
    r.verdict = r.ls1->overall();
    r.member = r.verdict != Verdict::Fail;
    for (const auto& it : r.ls1->items)
      if (it.verdict != Verdict::Pass) {
        r.reason = "LS1 " + it.id + " " + to_string(it.verdict) + (it.detail.empty() ? "" : ": " + it.detail);
        break;
      }
    return r;
  }
  r.quotients = quotient_checks(p, spec.genus());
  r.verdict = Verdict::Fail;
  for (const auto& q : r.quotients) {
    Verdict v2 = q.ls2.overall();
    if (v2 == Verdict::Pass) r.verdict = Verdict::Pass;
    if (v2 == Verdict::Undetermined && r.verdict == Verdict::Fail) r.verdict = Verdict::Undetermined;
  }
  r.member = r.verdict != Verdict::Fail;
  if (r.quotients.empty())
    r.reason = "no multiplier divides exactly";
  else if (!r.member)
    r.reason = "no quotient satisfies LS2";
  return r;
}

}  // namespace minidil
