#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quadtwist/check.hpp"
#include "quadtwist/polymap.hpp"

namespace quadtwist {

// ---------------------------------------------------------------------------
// Formal unknowns with a conjugation involution. The elimination works with
// polynomial relations among these symbols over Q; conjugation swaps each
// symbol with its partner (rendered with a '~' prefix).
// ---------------------------------------------------------------------------

using SymId = std::int32_t;

class SymbolTable {
 public:
  /// Creates the pair (name, ~name) and returns the id of the plain symbol.
  SymId add_conjugate_pair(const std::string& name);

  SymId conj(SymId s) const { return conj_.at(static_cast<std::size_t>(s)); }
  const std::string& name(SymId s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<SymId> conj_;
};

/// Commutative monomial in formal symbols (sorted multiset of ids).
using FormalMono = std::vector<SymId>;

/// Polynomial over Q in formal symbols. Only what the elimination needs:
/// ring operations, conjugation, zero-substitution, shape classification.
class FormalPoly {
 public:
  FormalPoly() = default;
  static FormalPoly sym(SymId s);
  static FormalPoly constant(const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<FormalMono, Rational>& terms() const { return terms_; }

  FormalPoly operator+(const FormalPoly& o) const;
  FormalPoly operator-(const FormalPoly& o) const;
  FormalPoly operator*(const FormalPoly& o) const;

  FormalPoly conjugated(const SymbolTable& syms) const;

  /// Drops every monomial that mentions a zeroed symbol.
  FormalPoly substitute_zero(const std::vector<bool>& zeroed) const;

  std::string str(const SymbolTable& syms) const;

 private:
  void add_term(const FormalMono& m, const Rational& c);
  std::map<FormalMono, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Unknown-coefficient ansatz and the constraint pipeline
// ---------------------------------------------------------------------------

enum class Slot { phi_prime, phi_double_prime };

/// sum_{k,l <= D} a_{k,l} x^k (sigma x)^l with formal coefficients; entries
/// removed by the weight filter hold the sentinel -1.
struct UnknownPoly {
  std::int64_t bound = 0;
  Slot slot = Slot::phi_prime;
  std::vector<std::vector<SymId>> coeffs;  // (D+1) x (D+1), -1 = eliminated
  bool filtered = false;

  /// Torus weight of the (k, l) term under x -> l^2 x: 6 + 2k - 2l for the
  /// phi' slot, 2k - 2l for the phi'' slot.
  std::int64_t weight(std::int64_t k, std::int64_t l) const;
  std::size_t unknown_count() const;
  std::vector<std::pair<std::int64_t, std::int64_t>> survivors() const;
};

enum class StepKind {
  weight_filter,
  norm_rewrite,
  top_coefficient,
  square_zero,
  norm_zero,
  substitution,
  conclusion
};

const char* step_kind_str(StepKind k);

struct TraceStep {
  StepKind kind;
  std::string target;
  std::string before;
  std::string after;
  std::vector<std::string> eliminated;
  std::string anchor;
};

struct ProofTrace {
  std::vector<TraceStep> steps;
  std::string str() const;
};

struct FormalEq {
  std::int64_t z_power = 0;
  FormalPoly lhs;
  Rational rhs;
  std::string provenance;
};

struct ConstraintSystem {
  SymbolTable syms;
  std::vector<FormalEq> main;       // z-coefficients of z^3 R(z)^2 + Q(z) ~Q(z) = 1
  std::vector<FormalEq> companion;  // z-coefficients of Q(z) (R(z) + ~R(z)) = 0
};

struct Prop1Setup {
  std::int64_t bound = 0;
  SymbolTable syms;
  UnknownPoly phi_prime;
  UnknownPoly phi_double_prime;
};

/// Full bidegree-<=D families of unknowns for both slots: a[k,l] for phi',
/// b[k,l] for phi''.
Prop1Setup ansatz(std::int64_t degree_bound);

/// Zeroes every unknown of nonzero weight; survivors are exactly l = k + 3
/// (phi') and l = k (phi''). Records one weight-filter step per slot.
void apply_equivariance_filter(Prop1Setup& setup, ProofTrace& trace);

struct NormalizedUnknowns {
  std::vector<SymId> r;  // r_i = a_{i, i+3}; may be empty (R = 0 slot)
  std::vector<SymId> q;  // q_i = b_{i, i}
};

/// Renames the filtered survivors into univariate coefficient families:
/// phi'(x) = (sigma x)^3 R(x sigma x), phi''(x) = Q(x sigma x). Rejects an
/// unfiltered setup.
NormalizedUnknowns normal_form_norm(const Prop1Setup& setup, ProofTrace& trace);

/// Coefficientwise (in z) constraints of z^3 R(z)^2 + Q(z) ~Q(z) = 1 plus
/// the companion relations Q(z)(R(z) + ~R(z)) = 0, with provenance.
ConstraintSystem extract_involution_constraints(const SymbolTable& syms,
                                                const NormalizedUnknowns& rq, ProofTrace& trace);

struct SolutionFamily {
  SymId omega = -1;                  // the surviving unknown q_0
  std::vector<SymId> zeroed;         // all eliminated symbols
  std::string description;           // "phi' = 0, phi'' = omega with omega*~omega = 1"
};

/// Degree-parity elimination: the top pending z-coefficient is always a pure
/// square r^2 (odd side) or a pure norm c ~c (even side); the two inference
/// rules descend until only q0 ~q0 = 1 remains. The companion relations
/// vanish once R = 0 and are discharged by substitution.
SolutionFamily eliminate(const ConstraintSystem& cs, ProofTrace& trace);

/// Re-runs the recorded steps against the initial system and confirms every
/// before/after matches and the final solved form is the same family.
bool replay(const ConstraintSystem& cs, const ProofTrace& trace, const SolutionFamily& expect,
            std::string* why = nullptr);

/// The classified involution tau_omega(x, y) = (sigma x, omega sigma y) with
/// a formal norm-one omega (a unit variable), or a concrete omega.
PolyMap family_map_formal(const Discriminant& d);
PolyMap family_map(const Discriminant& d, const QuadElem& omega);

/// Rechecks the defining conditions on a family member:
///   (i) first component is sigma x, (ii) base-field linearity in y,
///   (iii) restriction of scalars exists (concrete members),
///   (iv) involutivity, (v) equivariance against (l^2 x, l^3 y).
std::vector<CheckResult> verify_family_formal(const Discriminant& d);
std::vector<CheckResult> verify_family(const Discriminant& d, const QuadElem& omega);

/// The same condition checks against an arbitrary candidate involution of
/// K^2 in (x, xb)/(y, yb) coordinates. `has_unit_parameter` skips the
/// scalar-restriction check, which needs a fully concrete map.
std::vector<CheckResult> verify_conditions(const PolyMap& tau, bool has_unit_parameter,
                                           const std::string& label);

}  // namespace quadtwist
