#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

namespace kissing {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational make_rational(long long num, long long den) {
  return Rational(BigInt(num), BigInt(den));
}

/// Representative of q mod 1 in [0, 1).
inline Rational mod1(const Rational& q) {
  BigInt fl = q.numerator() / q.denominator();
  if (q.numerator() < 0 && fl * q.denominator() != q.numerator()) fl -= 1;
  return q - Rational(fl, BigInt(1));
}

inline std::string to_string(const Rational& q) {
  return q.numerator().str() + "/" + q.denominator().str();
}

}  // namespace kissing
