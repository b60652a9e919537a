#include "quadtwist/quadratic.hpp"

#include <ostream>
#include <stdexcept>

namespace quadtwist {

namespace {

void require_same_disc(const QuadElem& a, const QuadElem& b) {
  if (a.disc() != b.disc()) {
    throw std::invalid_argument("mismatched discriminants: alpha = " + a.disc().alpha().str() +
                                " vs " + b.disc().alpha().str());
  }
}

}  // namespace

Discriminant::Discriminant(const Rational& alpha) : alpha_(alpha) {
  if (is_square_rational(alpha)) {
    throw std::invalid_argument("alpha = " + alpha.str() +
                                " is a rational square; K would not be a field");
  }
}

Discriminant Discriminant::unchecked(const Rational& alpha) {
  return Discriminant(alpha, unchecked_tag{});
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
  require_same_disc(*this, o);
  return QuadElem(x_ + o.x_, y_ + o.y_, disc_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
  require_same_disc(*this, o);
  return QuadElem(x_ - o.x_, y_ - o.y_, disc_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
  require_same_disc(*this, o);
  const Rational& alpha = disc_.alpha();
  return QuadElem(x_ * o.x_ + alpha * y_ * o.y_, x_ * o.y_ + y_ * o.x_, disc_);
}

Rational QuadElem::norm() const { return x_ * x_ - disc_.alpha() * y_ * y_; }

QuadElem QuadElem::inverse() const {
  Rational n = norm();
  if (n.is_zero()) {
    if (is_zero()) {
      throw std::invalid_argument("inverse of zero");
    }
    // Only reachable through Discriminant::unchecked with a square alpha.
    throw std::invalid_argument("norm of " + str() + " vanishes; alpha = " +
                                disc_.alpha().str() + " is not a valid discriminant");
  }
  QuadElem c = conjugate();
  Rational inv = n.inverse();
  return QuadElem(c.x() * inv, c.y() * inv, disc_);
}

QuadElem QuadElem::pow(std::int64_t e) const {
  QuadElem base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  QuadElem acc = QuadElem::one(disc_);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool operator==(const QuadElem& a, const QuadElem& b) {
  return a.disc_ == b.disc_ && a.x_ == b.x_ && a.y_ == b.y_;
}

std::string QuadElem::str() const {
  if (y_.is_zero()) return x_.str();
  std::string t_part = y_.is_one() ? "t" : (y_ == Rational(-1) ? "-t" : y_.str() + "*t");
  if (x_.is_zero()) return t_part;
  if (y_.sign() < 0) {
    Rational abs_y = -y_;
    std::string mag = abs_y.is_one() ? "t" : abs_y.str() + "*t";
    return x_.str() + " - " + mag;
  }
  return x_.str() + " + " + t_part;
}

std::ostream& operator<<(std::ostream& os, const QuadElem& z) { return os << z.str(); }

TorusPoint::TorusPoint(QuadElem z) : value_(std::move(z)) {
  Rational n = value_.norm();
  if (!n.is_one()) {
    throw std::invalid_argument("not a norm-one element: N(" + value_.str() + ") = " + n.str());
  }
}

Mat2 torus_matrix(const TorusPoint& p) {
  const QuadElem& z = p.value();
  const Rational& alpha = z.disc().alpha();
  return Mat2{{{z.x(), alpha * z.y()}, {z.y(), z.x()}}};
}

}  // namespace quadtwist
