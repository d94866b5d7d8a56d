#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nsq {

/// Exact rational number. Every coefficient in the engine bottoms out here.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& r) { return r == 0; }

inline std::string format(const Rational& r) { return r.str(); }

inline Rational factorial(int k) {
  Rational out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

inline Rational binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0;
  return factorial(top) / (factorial(bottom) * factorial(top - bottom));
}

/// Parses "a" or "a/b" with b > 0.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("non-positive denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + text);
  }
}

}  // namespace nsq
