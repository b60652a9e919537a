#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace quadtwist {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in canonical form:
/// gcd(|numerator|, denominator) = 1 and denominator > 0.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {}  // NOLINT: implicit for integer literals
  Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& num, const BigInt& den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Strict parse of the canonical text form "p" or "p/q". Any other
  /// spelling ("2/4", "3/1", "+3", "03") is rejected.
  static Rational parse(const std::string& text);

  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return value_.sign(); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on division by zero
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  Rational inverse() const;  // throws on zero

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  /// Canonical text form: "p/q", or "p" when q = 1.
  std::string str() const;

 private:
  boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

bool is_perfect_square(const BigInt& n);

/// True iff q is the square of a rational. For reduced p/q this holds iff
/// p >= 0 and p*q is a perfect integer square.
bool is_square_rational(const Rational& q);

}  // namespace quadtwist
