#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "topcorr/errors.hpp"

namespace topcorr {

/// Exact arbitrary precision rational; every weight, derivative and cochain uses it.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

using Index = std::size_t;
inline constexpr Index npos = static_cast<Index>(-1);

/// Parses "n" or "n/d" with optional leading minus on n.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return ParseError("malformed rational \"" + std::string(text) + "\": " + why);
  };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Integer {
    if (s.empty()) throw bad("empty component");
    std::size_t i = 0;
    bool neg = false;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw bad("missing digits");
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad("non-digit character");
      v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  Integer num = parse_int(text.substr(0, slash), true);
  Integer den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw bad("zero denominator");
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  const Integer& n = boost::multiprecision::numerator(q);
  const Integer& d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Square root when q is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer rn = boost::multiprecision::sqrt(n);
  Integer rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace topcorr
