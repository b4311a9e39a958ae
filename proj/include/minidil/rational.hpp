#pragma once

// Exact integer and rational scalars (GMP-backed) and their text forms.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "minidil/errors.hpp"

namespace minidil {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt pow10(unsigned long exp) { return pow_int(BigInt(10), exp); }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ParseError("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

// 10^-exp as an exact rational.
inline BigRational pow10_inverse(unsigned long exp) { return make_rational(BigInt(1), pow10(exp)); }

// Always "p/q", also when q == 1.
inline std::string to_fraction_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt floor_of(const BigRational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Round half away from zero to `places` decimals; returns the scaled integer.
inline BigInt round_half_away_scaled(const BigRational& q, unsigned places) {
  BigRational scaled = q * BigRational(pow10(places));
  BigRational half(1, 2);
  if (sgn(scaled) >= 0) return floor_of(scaled + half);
  return -floor_of(-scaled + half);
}

// Fixed-point rendering of a scaled integer: (123456, 5) -> "1.23456".
inline std::string scaled_to_decimal(const BigInt& scaled, unsigned places) {
  BigInt mag = abs(scaled);
  std::string digits = mag.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = sgn(scaled) < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

inline std::string to_decimal_string(const BigRational& q, unsigned places) {
  return scaled_to_decimal(round_half_away_scaled(q, places), places);
}

inline long double to_long_double(const BigRational& q) {
  // 30 significant digits is enough for every caller (profile checks).
  BigInt scaled = floor_of(q * BigRational(pow10(30)));
  return std::stold(scaled.get_str()) / 1e30L;
}

// Accepts "p/q", "-12", "0.001", "1e-12", "2.5E+3".
inline BigRational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw ParseError("bad rational '" + s + "'");
    return make_rational(num, den);
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_point) throw ParseError("bad decimal '" + s + "'");
      seen_point = true;
    } else {
      digits += s[i];
      if (seen_point) ++frac_digits;
    }
  }
  if (digits.empty()) throw ParseError("bad decimal '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("bad decimal '" + s + "'");
    ++i;
    std::size_t used = 0;
    try {
      exponent = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + s + "'");
    }
    if (i + used != s.size()) throw ParseError("bad exponent in '" + s + "'");
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_digits;
  if (shift >= 0) return BigRational(mantissa * pow10(static_cast<unsigned long>(shift)));
  return make_rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

// Fits-in-int64 conversion used by the JSON writers.
inline std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error("integer " + v.get_str() + " exceeds the JSON integer range");
  return v.get_si();
}

}  // namespace minidil
