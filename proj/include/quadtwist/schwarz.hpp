#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadtwist/check.hpp"
#include "quadtwist/polymap.hpp"

namespace quadtwist {

/// Variable names used by the affine 4-space action: base (a, b), fiber
/// (x, y), torus parameter l.
struct SchwarzVars {
  static constexpr const char* base_a = "a";
  static constexpr const char* base_b = "b";
  static constexpr const char* fiber_x = "x";
  static constexpr const char* fiber_y = "y";
  static constexpr const char* lambda = "l";
};

/// The torus action (a, b, x, y) -> (l^2 a, l^-2 b, l^3 x, l^-3 y).
PolyMap build_mu(const Discriminant& d);

/// The involution (a, b, x, y) -> (b, a, (1+ab+(ab)^2) y - b^3 x,
/// a^3 y + (1-ab) x): base swap, fiber matrix M(a, b) applied to (y, x).
PolyMap build_tau(const Discriminant& d);

/// The fiberwise-linear automorphism (a, b, x, y) -> (a, b, C(a,b)·(x, y))
/// that linearizes tau. Defined over Q.
PolyMap build_phi(const Discriminant& d);

/// Inverse of phi via the adjugate over the constant determinant of C(a, b);
/// throws if that determinant fails to be a nonzero constant.
PolyMap build_phi_inverse(const Discriminant& d);

struct ActionBundle {
  PolyMap mu;
  PolyMap tau;
  PolyMap phi;
  PolyMap phi_inverse;
};

ActionBundle schwarz_bundle(const Discriminant& d);

/// Which fiber vector a 2x2 matrix of base polynomials multiplies.
enum class FiberOrder { xy, yx };

/// 2x2 matrix over Q[a, b] extracted from the fiber components of a
/// fiberwise-linear self-map of A^2 x A^2.
struct FiberMatrix {
  std::array<std::array<SparsePoly, 2>, 2> entries;
  FiberOrder order;

  SparsePoly det() const;
};

/// Extracts the fiber matrix with respect to the requested order. The base
/// components must be (a, b) or (b, a) and the fiber components linear
/// homogeneous in (x, y); violations throw with the offending monomials.
FiberMatrix fiber_matrix(const PolyMap& f, FiberOrder order);

CheckResult check_involution(const PolyMap& f);

/// With fresh unit parameters l1, l2: mu(l1)∘mu(l2) = mu(l1*l2), and
/// mu(1) = id.
CheckResult check_group_law(const PolyMap& mu, const std::string& lambda = SchwarzVars::lambda);

/// tau∘mu_l = mu_{1/l}∘tau as Laurent-polynomial maps.
CheckResult check_equivariance(const PolyMap& mu, const PolyMap& tau,
                               const std::string& lambda = SchwarzVars::lambda);

struct LinearityReport {
  bool linear = false;
  bool involutive = false;
  bool over_base_field = false;           // every coefficient has zero t-part
  std::vector<std::vector<QuadElem>> matrix;  // rows of the linear map, when linear
  std::string matrix_text;
  std::string shape_note;  // comparison with the expected base-swap/diagonal shape
  std::string failure;     // offending monomials when not linear
};

/// L = phi ∘ tau ∘ phi^{-1} with a report: linearity (degree <= 1, no
/// constant term) and L∘L = id are the hard assertions; the shape of the
/// matrix is compared and recorded, never asserted.
std::pair<PolyMap, LinearityReport> conjugate_involution(const PolyMap& phi, const PolyMap& tau);

}  // namespace quadtwist
