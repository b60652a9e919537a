#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "quadtwist/rational.hpp"

namespace quadtwist {

/// The defining constant alpha of the quadratic extension K = Q(t), t^2 = alpha.
/// Construction validates that alpha is not a rational square, which is what
/// makes the norm form x^2 - alpha*y^2 anisotropic.
class Discriminant {
 public:
  explicit Discriminant(const Rational& alpha);

  /// Skips the non-square validation. Intended for tests that demonstrate
  /// what breaks when alpha is a square; never used by the library itself.
  static Discriminant unchecked(const Rational& alpha);

  const Rational& alpha() const { return alpha_; }

  friend bool operator==(const Discriminant& a, const Discriminant& b) {
    return a.alpha_ == b.alpha_;
  }
  friend bool operator!=(const Discriminant& a, const Discriminant& b) {
    return a.alpha_ != b.alpha_;
  }

 private:
  struct unchecked_tag {};
  Discriminant(const Rational& alpha, unchecked_tag) : alpha_(alpha) {}
  Rational alpha_;
};

/// Element x + t*y of K = Q(sqrt(alpha)). Equality is componentwise on (x, y)
/// for equal discriminant; all operations keep the pair reduced.
class QuadElem {
 public:
  QuadElem(Rational x, Rational y, Discriminant disc)
      : x_(std::move(x)), y_(std::move(y)), disc_(std::move(disc)) {}

  static QuadElem zero(const Discriminant& d) { return QuadElem(0, 0, d); }
  static QuadElem one(const Discriminant& d) { return QuadElem(1, 0, d); }
  static QuadElem t(const Discriminant& d) { return QuadElem(0, 1, d); }

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const Discriminant& disc() const { return disc_; }

  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
  bool is_one() const { return x_.is_one() && y_.is_zero(); }
  bool is_rational() const { return y_.is_zero(); }

  QuadElem operator-() const { return QuadElem(-x_, -y_, disc_); }
  QuadElem operator+(const QuadElem& o) const;
  QuadElem operator-(const QuadElem& o) const;
  QuadElem operator*(const QuadElem& o) const;
  QuadElem operator*(const Rational& c) const { return QuadElem(x_ * c, y_ * c, disc_); }
  QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }

  /// Galois conjugate x + t*y -> x - t*y.
  QuadElem conjugate() const { return QuadElem(x_, -y_, disc_); }

  /// Norm to the base field: x^2 - alpha*y^2. Multiplicative, and zero only
  /// at zero (alpha being a non-square).
  Rational norm() const;

  /// Trace to the base field: z + conj(z) = 2x.
  Rational trace() const { return x_ + x_; }

  /// conj(z) / norm(z); throws on zero.
  QuadElem inverse() const;

  QuadElem pow(std::int64_t e) const;

  friend bool operator==(const QuadElem& a, const QuadElem& b);
  friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

  std::string str() const;

 private:
  Rational x_, y_;
  Discriminant disc_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& z);

/// Point of the norm-one torus S = { z in K* : z * conj(z) = 1 }.
/// The inverse of a torus point is its conjugate.
class TorusPoint {
 public:
  /// Accepts z iff norm(z) = 1 exactly; the rejection message carries the
  /// actual norm.
  explicit TorusPoint(QuadElem z);

  const QuadElem& value() const { return value_; }
  TorusPoint inverse() const { return TorusPoint(value_.conjugate()); }
  TorusPoint operator*(const TorusPoint& o) const { return TorusPoint(value_ * o.value()); }

 private:
  QuadElem value_;
};

using Mat2 = std::array<std::array<Rational, 2>, 2>;

/// Matrix realization [[x, alpha*y], [y, x]] of a norm-one torus point;
/// determinant 1, and matrix product matches quadratic multiplication.
Mat2 torus_matrix(const TorusPoint& p);

}  // namespace quadtwist
