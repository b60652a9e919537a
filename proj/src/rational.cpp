#include "quadtwist/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace quadtwist {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) {
    throw std::invalid_argument("rational with zero denominator");
  }
  // Division normalizes the sign and reduces; the two-argument constructor
  // rejects negative denominators outright.
  value_ = boost::multiprecision::cpp_rational(num) / boost::multiprecision::cpp_rational(den);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  std::size_t slash = text.find('/');
  std::string num_part = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den_part = slash == std::string::npos ? "" : text.substr(slash + 1);

  auto digits_only = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::string abs_num = (!num_part.empty() && num_part[0] == '-') ? num_part.substr(1) : num_part;
  if (!digits_only(abs_num) || (slash != std::string::npos && !digits_only(den_part))) {
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  }

  Rational r(BigInt(num_part), slash == std::string::npos ? BigInt(1) : BigInt(den_part));
  if (r.str() != text) {
    throw std::invalid_argument("non-canonical rational '" + text + "' (canonical form is '" +
                                r.str() + "')");
  }
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  Rational r;
  r.value_ = value_ + o.value_;
  return r;
}

Rational Rational::operator-(const Rational& o) const {
  Rational r;
  r.value_ = value_ - o.value_;
  return r;
}

Rational Rational::operator*(const Rational& o) const {
  Rational r;
  r.value_ = value_ * o.value_;
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) {
    throw std::invalid_argument("rational division by zero");
  }
  Rational r;
  r.value_ = value_ / o.value_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) {
    throw std::invalid_argument("inverse of zero rational");
  }
  return Rational(1) / *this;
}

std::string Rational::str() const {
  if (is_integer()) {
    return num().str();
  }
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

bool is_square_rational(const Rational& q) {
  if (q.sign() < 0) return false;
  return is_perfect_square(q.num() * q.den());
}

}  // namespace quadtwist
