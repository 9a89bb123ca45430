#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "stablematch/errors.hpp"

namespace stablematch {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses an optionally signed decimal such as "-12", "0.25" or "+3.", exactly.
/// Returns false on malformed input.
inline bool try_parse_decimal(std::string_view text, Rational& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  Integer numerator = 0;
  Integer denominator = 1;
  bool digits = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !point) {
      point = true;
    } else if (c >= '0' && c <= '9') {
      numerator = numerator * 10 + (c - '0');
      if (point) denominator *= 10;
      digits = true;
    } else {
      return false;
    }
  }
  if (!digits) return false;
  out = Rational(negative ? Integer(-numerator) : numerator, denominator);
  return true;
}

inline Rational parse_decimal(std::string_view text) {
  Rational r;
  if (!try_parse_decimal(text, r))
    throw Error(ErrorKind::Parse, "malformed decimal '" + std::string(text) + "'");
  return r;
}

/// Exact decimal rendering: integers without a point, terminating fractions
/// with all their digits, anything else as "p/q".
inline std::string format_rational(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  Integer rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  if (rest != 1) return num.str() + "/" + den.str();

  const unsigned places = std::max(twos, fives);
  Integer scale = 1;
  for (unsigned k = 0; k < places; ++k) scale *= 10;
  Integer scaled = num * (scale / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

}  // namespace stablematch
