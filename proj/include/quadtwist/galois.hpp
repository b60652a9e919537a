#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quadtwist/check.hpp"
#include "quadtwist/linalg.hpp"
#include "quadtwist/polymap.hpp"
#include "quadtwist/sampling.hpp"

namespace quadtwist {

using KMatrix = DenseMatrix<QuadElem>;
using KVector = std::vector<QuadElem>;
using RatMatrix = DenseMatrix<Rational>;

KMatrix k_identity(const Discriminant& d, std::size_t n);
KMatrix k_conjugate(const KMatrix& m);
bool k_is_zero(const KMatrix& m);

/// v -> A v + B sigma(v): the unique splitting of a base-field-linear map on
/// K^m into K-linear and K-antilinear parts.
struct SemilinearMap {
  KMatrix linear;      // A
  KMatrix antilinear;  // B

  std::size_t dim() const { return linear.size(); }
  KVector apply(const KVector& v) const;
  SemilinearMap compose(const SemilinearMap& inner) const;
};

/// Splits a 2m x 2m matrix over the base field, written w.r.t. the basis
/// {1, t} per K-coordinate, into (A, B). Reconstruction is exact.
SemilinearMap decompose_semilinear(const RatMatrix& f, const Discriminant& d);

/// The 2m x 2m base-field matrix of a semilinear map in the {1, t} basis.
RatMatrix restrict_scalars_matrix(const SemilinearMap& f, const Discriminant& d);

/// Base-field form of the fixed set { v in K^m : sigma(v) = L v }.
struct KStructure {
  std::size_t ambient_dim = 0;    // m
  std::vector<KVector> basis;     // m vectors, k-linearly independent, K-spanning

  /// True iff w lies in the k-span of the basis.
  bool contains(const KVector& w) const;
};

/// Solves sigma(v) = L v for a K-linear cocycle L (antilinear part must be
/// zero). Checks the cocycle condition sigma(L)·L = 1 first and reports the
/// defect matrix on failure. The fixed set has k-dimension exactly m and
/// K-spans K^m; both are verified.
KStructure twisted_points(const SemilinearMap& L, const Discriminant& d);

/// Doubles every conjugate-paired coordinate x into base-field coordinates
/// (x0, x1) with x = x0 + t*x1, expands, and splits each component into its
/// t-free and t-parts. Unit variables are rejected.
PolyMap weil_restrict(const PolyMap& f);

struct E0Result {
  KStructure structure;
  PolyMap conjugated;              // L = phi ∘ tau ∘ phi^{-1}
  RatMatrix conjugated_matrix;     // its 4x4 matrix over the base field
  bool matches_reference_shape = false;  // basis equals {t e1, e2, e3, e4}
  std::string shape_note;
};

/// Builds the twisted-form point structure in phi-coordinates: transports
/// { v : sigma(v) = tau(v) } through phi (legitimate since phi is defined
/// over the base field and commutes with conjugation) and solves the
/// resulting linear fixed-point problem. The computed basis is normative;
/// the note records how it compares with the diag(-1, 1, 1, 1) description
/// (basis { t e1, e2, e3, e4 }).
E0Result build_E0(const PolyMap& phi, const PolyMap& tau);

/// Symbolic stabilization chain, one structural identity per step:
///   sigma∘tau(l v) = tau∘sigma(l v) = tau(sigma(l) sigma(v))
///                  = tau(l^{-1} tau(v)) = l v  on  { sigma(v) = tau(v) }.
CheckResult check_stabilization_symbolic(const PolyMap& mu, const PolyMap& tau);

/// Seeded sampling: random k-points of E0 and the given torus points; both
/// mu(l0, ·) and tau must keep every sample inside the k-span of the basis.
CheckResult check_stabilization_sampled(const PolyMap& mu, const PolyMap& tau,
                                        const PolyMap& phi, const PolyMap& phi_inv,
                                        const KStructure& e0,
                                        const std::vector<TorusPoint>& lambdas,
                                        std::size_t n_samples, Sampler& sampler);

struct FixedLocus {
  bool whole_space = false;
  bool regular = true;                  // every component difference is 0 or c * coordinate
  std::vector<std::string> vanishing;   // coordinates forced to zero
  std::string describe() const;
};

/// Fixed locus of the parameter = -1 slice of a diagonal monomial action;
/// passes iff it is exactly { x = y = 0 }, the zero-section of the bundle.
/// A slice fixing everything is reported as criterion-inapplicable.
std::pair<FixedLocus, CheckResult> fixed_locus_I(const PolyMap& mu,
                                                 const std::string& lambda,
                                                 const std::vector<std::string>& fiber_vars);

}  // namespace quadtwist
