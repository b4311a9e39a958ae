#pragma once

// Exact univariate polynomials over the integers.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minidil/errors.hpp"
#include "minidil/rational.hpp"

namespace minidil {

/// Integer polynomial with coefficients stored by ascending power.
///
/// The zero polynomial has degree -1 and no stored coefficients; all other
/// values carry a nonzero leading coefficient.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static IntPoly ascending(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
  }

  // Leading coefficient first, the way polynomials are written by hand.
  static IntPoly descending(std::span<const BigInt> c) {
    std::vector<BigInt> v(c.rbegin(), c.rend());
    return IntPoly(std::move(v));
  }
  static IntPoly descending(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    v.reserve(c.size());
    for (auto it = std::rbegin(c); it != std::rend(c); ++it) v.emplace_back(*it);
    return IntPoly(std::move(v));
  }

  static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
  static IntPoly one() { return constant(BigInt(1)); }
  static IntPoly monomial(std::size_t power, const BigInt& c = BigInt(1)) {
    std::vector<BigInt> v(power + 1, BigInt(0));
    v[power] = c;
    return IntPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

  // Coefficient of x^i; zero above the degree.
  BigInt operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  std::span<const BigInt> coefficients() const { return coeffs_; }
  const BigInt& leading() const {
    if (is_zero()) throw PreconditionError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  BigInt constant_term() const { return (*this)[0]; }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  IntPoly operator-() const {
    std::vector<BigInt> v = coeffs_;
    for (auto& c : v) c = -c;
    return IntPoly(std::move(v));
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(v));
  }

  friend IntPoly operator*(const BigInt& s, const IntPoly& p) {
    std::vector<BigInt> v = p.coeffs_;
    for (auto& c : v) c *= s;
    return IntPoly(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

inline IntPoly multiply(const IntPoly& p, const IntPoly& q) { return p * q; }

/// Exact value of p at x (Horner in rational arithmetic).
inline BigRational eval(const IntPoly& p, const BigRational& x) {
  BigRational acc(0);
  auto c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigRational(*it);
  return acc;
}

/// Sign of p(x) without forming the rational value: v^d * p(u/v) is an integer.
inline int sign_at(const IntPoly& p, const BigRational& x) {
  if (p.is_zero()) return 0;
  const BigInt& u = x.get_num();
  const BigInt& v = x.get_den();
  auto c = p.coefficients();
  BigInt acc = c.back();
  BigInt vpow(1);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    vpow *= v;
    acc = acc * u + c[i] * vpow;
  }
  return sgn(acc);
}

/// Quotient r with q * r == p, or nullopt when q does not divide p over Z.
inline std::optional<IntPoly> exact_divide(const IntPoly& p, const IntPoly& q) {
  if (q.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (p.is_zero()) return IntPoly{};
  if (p.degree() < q.degree()) return std::nullopt;
  std::vector<BigInt> rem(p.coefficients().begin(), p.coefficients().end());
  auto qc = q.coefficients();
  const std::size_t dq = qc.size() - 1;
  std::vector<BigInt> quot(rem.size() - dq, BigInt(0));
  for (std::size_t i = quot.size(); i-- > 0;) {
    const BigInt& top = rem[i + dq];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), qc.back().get_mpz_t())) return std::nullopt;
    BigInt f = top / qc.back();
    quot[i] = f;
    for (std::size_t j = 0; j <= dq; ++j) rem[i + j] -= f * qc[j];
  }
  for (std::size_t i = 0; i < dq; ++i)
    if (rem[i] != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

inline IntPoly divide_or_throw(const IntPoly& p, const IntPoly& q);

inline IntPoly derivative(const IntPoly& p) {
  if (p.degree() < 1) return {};
  auto c = p.coefficients();
  std::vector<BigInt> v(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * BigInt(static_cast<unsigned long>(i));
  return IntPoly(std::move(v));
}

inline BigInt content(const IntPoly& p) {
  BigInt g(0);
  for (const auto& c : p.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// p divided by its content, normalized to a positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (sgn(p.leading()) < 0) g = -g;
  std::vector<BigInt> v(p.coefficients().begin(), p.coefficients().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

/// x^d p(1/x): coefficients reversed.
inline IntPoly reversal(const IntPoly& p) {
  std::vector<BigInt> v(p.coefficients().rbegin(), p.coefficients().rend());
  return IntPoly(std::move(v));
}

/// p(-x).
inline IntPoly reflect(const IntPoly& p) {
  std::vector<BigInt> v(p.coefficients().begin(), p.coefficients().end());
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPoly(std::move(v));
}

inline bool is_odd(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

inline bool is_reciprocal_mod2(const IntPoly& p) {
  const int d = p.degree();
  for (int i = 0; i <= d; ++i)
    if (is_odd(p[i]) != is_odd(p[d - i])) return false;
  return true;
}

inline bool is_reciprocal(const IntPoly& p) {
  const int d = p.degree();
  for (int i = 0; i <= d; ++i)
    if (p[i] != p[d - i]) return false;
  return true;
}

inline bool is_antireciprocal(const IntPoly& p) {
  const int d = p.degree();
  for (int i = 0; i <= d; ++i)
    if (p[i] != -p[d - i]) return false;
  return !p.is_zero();
}

/// p(x) == (-1)^g x^{2g} p(-1/x) with g = degree/2.
inline bool satisfies_ls2_symmetry(const IntPoly& p) {
  const int d = p.degree();
  if (d < 0 || d % 2 != 0) throw DegreeParity("symmetry test needs an even degree, got " + std::to_string(d));
  const int g = d / 2;
  // Coefficient of x^j on the right: (-1)^g (-1)^(d-j) p[d-j].
  for (int j = 0; j <= d; ++j) {
    BigInt rhs = p[d - j];
    if ((g + d - j) % 2 != 0) rhs = -rhs;
    if (p[j] != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text and JSON forms.

inline std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  auto c = p.coefficients();
  for (int i = p.degree(); i >= 0; --i) {
    const BigInt& a = c[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    const bool neg = sgn(a) < 0;
    BigInt mag = abs(a);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

inline nlohmann::json to_json(const IntPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  auto c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) arr.push_back(to_int64(*it));
  return arr;
}

namespace detail {

inline void skip_space(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline std::string read_digits(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return std::string(s.substr(start, i - start));
}

inline IntPoly parse_json_array(std::string_view s) {
  std::size_t i = 1;
  std::vector<BigInt> desc;
  skip_space(s, i);
  if (i < s.size() && s[i] == ']') throw ParseError("empty coefficient array");
  while (true) {
    skip_space(s, i);
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    std::string digits = read_digits(s, i);
    if (digits.empty()) throw ParseError("expected an integer in coefficient array");
    BigInt v(digits, 10);
    desc.push_back(neg ? BigInt(-v) : v);
    skip_space(s, i);
    if (i >= s.size()) throw ParseError("unterminated coefficient array");
    if (s[i] == ',') {
      ++i;
      continue;
    }
    if (s[i] == ']') {
      ++i;
      break;
    }
    throw ParseError(std::string("unexpected '") + s[i] + "' in coefficient array");
  }
  skip_space(s, i);
  if (i != s.size()) throw ParseError("trailing characters after coefficient array");
  if (desc.front() == 0 && desc.size() > 1) throw ParseError("leading coefficient must be nonzero");
  return IntPoly::descending(desc);
}

inline IntPoly parse_human(std::string_view s) {
  std::map<std::size_t, BigInt> terms;
  std::size_t i = 0;
  bool first = true;
  while (true) {
    skip_space(s, i);
    if (i >= s.size()) break;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i++] == '-';
      skip_space(s, i);
    } else if (!first) {
      throw ParseError(std::string("expected '+' or '-' before '") + s[i] + "'");
    }
    first = false;
    std::string digits = read_digits(s, i);
    BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits, 10);
    skip_space(s, i);
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip_space(s, i);
      if (i >= s.size() || s[i] != 'x') throw ParseError("expected 'x' after '*'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      skip_space(s, i);
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_space(s, i);
        if (i < s.size() && s[i] == '{') ++i;
        std::string e = read_digits(s, i);
        if (e.empty()) throw ParseError("expected exponent after '^'");
        if (i < s.size() && s[i] == '}') ++i;
        power = std::stoul(e);
      }
    } else if (digits.empty()) {
      throw ParseError("expected a coefficient or 'x'");
    }
    terms[power] += neg ? BigInt(-coef) : coef;
  }
  if (first) throw ParseError("empty polynomial");
  std::vector<BigInt> asc(terms.rbegin()->first + 1, BigInt(0));
  for (const auto& [pw, c] : terms) asc[pw] = c;
  return IntPoly(std::move(asc));
}

}  // namespace detail

/// Parses either a JSON coefficient array in descending powers ("[1,-1,-1]")
/// or a human form such as "x^3 - x^2 - x - 1".
inline IntPoly parse_poly(std::string_view text) {
  std::size_t i = 0;
  detail::skip_space(text, i);
  if (i < text.size() && text[i] == '[') return detail::parse_json_array(text.substr(i));
  return detail::parse_human(text);
}

inline IntPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("polynomial JSON must be a nonempty integer array");
  std::vector<BigInt> desc;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError("polynomial JSON entries must be integers");
    desc.emplace_back(static_cast<long>(e.get<std::int64_t>()));
  }
  if (desc.front() == 0 && desc.size() > 1) throw ParseError("leading coefficient must be nonzero");
  return IntPoly::descending(desc);
}

inline IntPoly divide_or_throw(const IntPoly& p, const IntPoly& q) {
  auto r = exact_divide(p, q);
  if (!r) throw NotDivisible(to_string(q) + " does not divide " + to_string(p));
  return *r;
}

}  // namespace minidil
