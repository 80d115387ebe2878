// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/rational.hpp"

#include "ctdiam/error.hpp"

#include <cctype>

namespace ctdiam {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RationalVector rational_zeros(Eigen::Index n) {
  RationalVector v(n);
  v.setZero();
  return v;
}

RationalVector rational_ones(Eigen::Index n) {
  RationalVector v(n);
  v.setOnes();
  return v;
}

RationalMatrix rational_zeros(Eigen::Index rows, Eigen::Index cols) {
  RationalMatrix m(rows, cols);
  m.setZero();
  return m;
}

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(trim(text.substr(0, slash)), whole);
    const Integer den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    Integer num = int_part.empty() ? Integer(0) : parse_integer(int_part, whole);
    Integer den = 1;
    if (!frac_part.empty()) {
      for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
      num = num * den + parse_integer(frac_part, whole);
    } else if (int_part.empty()) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = Rational(num, den);
  } else {
    value = Rational(parse_integer(text, whole));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor(const Rational& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil(const Rational& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  Integer q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

}  // namespace ctdiam
