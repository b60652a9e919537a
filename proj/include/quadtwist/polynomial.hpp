#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "quadtwist/quadratic.hpp"

namespace quadtwist {

enum class VarKind { affine, unit };

/// Declared variable. Unit variables are Laurent (any integer exponent) and
/// model norm-one torus parameters: the Galois involution acts on them by
/// exponent negation. A partner links a conjugate pair (x, xb) that the
/// involution swaps; only affine variables may be paired.
struct VarSpec {
  std::string name;
  VarKind kind = VarKind::affine;
  std::string partner;  // empty when unpaired

  friend bool operator==(const VarSpec& a, const VarSpec& b) {
    return a.name == b.name && a.kind == b.kind && a.partner == b.partner;
  }
};

VarSpec affine_var(std::string name);
VarSpec affine_pair_var(std::string name, std::string partner);
VarSpec unit_var(std::string name);

using ExpVec = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Graded-lexicographic order, highest first, so map iteration starts at the
/// leading term. The grade of a Laurent monomial is its exponent sum.
struct GrlexDesc {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

/// Sparse multivariate polynomial over K = Q(sqrt(alpha)) in a name-sorted
/// variable list. Canonical form: no zero coefficients, no unused variables,
/// terms ordered graded-lexicographically. Equality is structural on the
/// canonical form.
class SparsePoly {
 public:
  using TermMap = std::map<ExpVec, QuadElem, GrlexDesc>;

  explicit SparsePoly(Discriminant disc) : disc_(std::move(disc)) {}

  static SparsePoly constant(const QuadElem& c);
  static SparsePoly constant(const Discriminant& d, const Rational& c);
  static SparsePoly variable(const Discriminant& d, const VarSpec& v);
  static SparsePoly monomial(const Discriminant& d, std::vector<VarSpec> vars, ExpVec exps,
                             const QuadElem& coeff);

  const Discriminant& disc() const { return disc_; }
  const std::vector<VarSpec>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && vars_.empty()); }
  QuadElem constant_value() const;  // requires is_constant()

  bool depends_on(const std::string& var) const;
  std::int64_t degree_in(const std::string& var) const;  // max exponent, 0 if absent
  std::int64_t total_degree() const;                     // max exponent sum, 0 for 0

  /// Coefficient of a monomial given in (name, exponent) form; variables not
  /// mentioned must have exponent zero.
  QuadElem coeff(const std::map<std::string, std::int64_t>& mono) const;

  SparsePoly operator-() const;
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator*(const QuadElem& c) const;
  SparsePoly operator*(const Rational& c) const;
  SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  /// p^e. Negative e requires p to be an invertible monomial (unit variables
  /// only, nonzero coefficient).
  SparsePoly pow(std::int64_t e) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

  /// Substitutes subst[name] for each mapped variable, identity elsewhere.
  /// A variable occurring with negative exponents must receive an invertible
  /// monomial. Substitution can never create a negative exponent on an
  /// affine variable; such an attempt throws.
  SparsePoly compose(const std::map<std::string, SparsePoly>& subst) const;

  /// Exact evaluation. Every variable of the polynomial needs a value, and
  /// unit variables reject zero.
  QuadElem eval(const std::map<std::string, QuadElem>& point) const;

  /// Galois involution: conjugates every coefficient, swaps each conjugate
  /// pair, negates every unit exponent (sigma(lambda) = 1/lambda on the
  /// norm-one torus). Involutive.
  SparsePoly sigma() const;

  /// Splits by the exponent of a unit variable; parts do not contain the
  /// variable, and sum_w u^w * part[w] reproduces the input.
  std::map<std::int64_t, SparsePoly> weight_decompose(const std::string& unit_name) const;

  /// Terms of u-exponent exactly w, kept verbatim. w = 0 is the invariant
  /// part under the torus the unit variable parametrizes.
  SparsePoly filter_weight(const std::string& unit_name, std::int64_t w) const;

  std::string str() const;

 private:
  friend class PolyMap;
  void insert_term(const ExpVec& e, const QuadElem& c);
  void normalize();
  static void check_var(const VarSpec& v);

  Discriminant disc_;
  std::vector<VarSpec> vars_;  // name-sorted
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const SparsePoly& p);

/// Result of writing p = xb^shift * U(z), z = x*xb. `member` is false when p
/// has a uniform shift outside {0, 3}; a mixed-shift p throws instead.
struct NormForm {
  bool member = false;
  std::int64_t shift = 0;
  SparsePoly u;  // univariate in the variable named zvar
  std::string zvar = "z";
  std::string reason;  // set when !member
};

NormForm rewrite_norm(const SparsePoly& p, const std::string& x_name, const std::string& xb_name);

}  // namespace quadtwist
