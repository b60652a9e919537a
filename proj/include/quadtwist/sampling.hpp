#pragma once

#include <cstdint>
#include <random>

#include "quadtwist/quadratic.hpp"

namespace quadtwist {

/// Deterministic sample source for the exact property checks. Values are
/// reduced by modulo rather than std::uniform_int_distribution so the same
/// seed yields the same stream on every platform. Coordinates stay small
/// (|num| <= 99, den <= 99) to keep exact arithmetic fast.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  Rational rational(std::int64_t max_num = 99, std::int64_t max_den = 99) {
    return Rational(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Rational nonzero_rational(std::int64_t max_num = 99, std::int64_t max_den = 99) {
    for (;;) {
      Rational r = rational(max_num, max_den);
      if (!r.is_zero()) return r;
    }
  }

  QuadElem quad(const Discriminant& d) { return QuadElem(rational(), rational(), d); }

  QuadElem nonzero_quad(const Discriminant& d) {
    for (;;) {
      QuadElem z = quad(d);
      if (!z.is_zero()) return z;
    }
  }

  /// z / conj(z) has norm N(z)/N(z) = 1, so this reaches a dense set of S.
  TorusPoint torus_point(const Discriminant& d) {
    QuadElem z = nonzero_quad(d);
    return TorusPoint(z * z.conjugate().inverse());
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace quadtwist
