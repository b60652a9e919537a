#include "quadtwist/schwarz.hpp"

#include <sstream>
#include <stdexcept>

namespace quadtwist {

namespace {

std::vector<VarSpec> action_coords() {
  return {affine_var(SchwarzVars::base_a), affine_var(SchwarzVars::base_b),
          affine_var(SchwarzVars::fiber_x), affine_var(SchwarzVars::fiber_y)};
}

SparsePoly var_poly(const Discriminant& d, const char* name) {
  return SparsePoly::variable(d, affine_var(name));
}

SparsePoly lambda_power(const Discriminant& d, std::int64_t e) {
  return SparsePoly::monomial(d, {unit_var(SchwarzVars::lambda)}, ExpVec{e}, QuadElem::one(d));
}

}  // namespace

PolyMap build_mu(const Discriminant& d) {
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  SparsePoly x = var_poly(d, SchwarzVars::fiber_x);
  SparsePoly y = var_poly(d, SchwarzVars::fiber_y);
  return PolyMap(d, action_coords(),
                 {lambda_power(d, 2) * a, lambda_power(d, -2) * b, lambda_power(d, 3) * x,
                  lambda_power(d, -3) * y});
}

PolyMap build_tau(const Discriminant& d) {
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  SparsePoly x = var_poly(d, SchwarzVars::fiber_x);
  SparsePoly y = var_poly(d, SchwarzVars::fiber_y);
  SparsePoly one = SparsePoly::constant(d, 1);
  SparsePoly ab = a * b;
  // M(a, b) = [[1 + ab + (ab)^2, -b^3], [a^3, 1 - ab]], applied to (y, x).
  SparsePoly m11 = one + ab + ab * ab;
  SparsePoly m12 = -(b * b * b);
  SparsePoly m21 = a * a * a;
  SparsePoly m22 = one - ab;
  return PolyMap(d, action_coords(), {b, a, m11 * y + m12 * x, m21 * y + m22 * x});
}

namespace {

std::array<SparsePoly, 4> phi_coeffs(const Discriminant& d) {
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  SparsePoly one = SparsePoly::constant(d, 1);
  SparsePoly two = SparsePoly::constant(d, 2);
  SparsePoly a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  SparsePoly b2 = b * b, b3 = b2 * b;
  SparsePoly c11 = two * (one + a - two * b - a2 * b + two * a * b2 - b3);
  SparsePoly c12 = two * (one - two * a + b + a * b + a4 - two * a3 * b + a2 * b2);
  SparsePoly c21 = -two - a - b + a * b - b2 + a2 * b - b3;
  SparsePoly c22 = two + b + a + a2 + a * b - a3 + a2 * b - a4 + a2 * b2;
  return {c11, c12, c21, c22};
}

}  // namespace

PolyMap build_phi(const Discriminant& d) {
  auto [c11, c12, c21, c22] = phi_coeffs(d);
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  SparsePoly x = var_poly(d, SchwarzVars::fiber_x);
  SparsePoly y = var_poly(d, SchwarzVars::fiber_y);
  return PolyMap(d, action_coords(), {a, b, c11 * x + c12 * y, c21 * x + c22 * y});
}

PolyMap build_phi_inverse(const Discriminant& d) {
  auto [c11, c12, c21, c22] = phi_coeffs(d);
  SparsePoly det = c11 * c22 - c12 * c21;
  if (!det.is_constant() || det.is_zero()) {
    throw std::domain_error("fiber matrix determinant is not a nonzero constant: " + det.str());
  }
  QuadElem inv_det = det.constant_value().inverse();
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  SparsePoly x = var_poly(d, SchwarzVars::fiber_x);
  SparsePoly y = var_poly(d, SchwarzVars::fiber_y);
  return PolyMap(d, action_coords(),
                 {a, b, (c22 * x - c12 * y) * inv_det, (c11 * y - c21 * x) * inv_det});
}

ActionBundle schwarz_bundle(const Discriminant& d) {
  return ActionBundle{build_mu(d), build_tau(d), build_phi(d), build_phi_inverse(d)};
}

SparsePoly FiberMatrix::det() const {
  return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
}

FiberMatrix fiber_matrix(const PolyMap& f, FiberOrder order) {
  if (f.codomain_dim() != 4 || f.domain_dim() != 4) {
    throw std::invalid_argument("fiber_matrix expects a self-map of A^2 x A^2");
  }
  const Discriminant& d = f.disc();
  // The map must commute with the projection to the base: the first two
  // components may not involve the fiber variables.
  for (std::size_t i = 0; i < 2; ++i) {
    if (f.component(i).depends_on(SchwarzVars::fiber_x) ||
        f.component(i).depends_on(SchwarzVars::fiber_y)) {
      throw std::domain_error("base component " + std::to_string(i) +
                              " involves fiber variables: " + f.component(i).str());
    }
  }

  // Fiber components must be linear homogeneous in (x, y) with coefficients
  // in the base variables only.
  std::array<std::array<SparsePoly, 2>, 2> rows{
      {{SparsePoly(d), SparsePoly(d)}, {SparsePoly(d), SparsePoly(d)}}};
  for (std::size_t r = 0; r < 2; ++r) {
    const SparsePoly& comp = f.component(2 + r);
    std::size_t xpos = comp.vars().size(), ypos = comp.vars().size();
    for (std::size_t i = 0; i < comp.vars().size(); ++i) {
      const std::string& n = comp.vars()[i].name;
      if (n == SchwarzVars::fiber_x) xpos = i;
      if (n == SchwarzVars::fiber_y) ypos = i;
    }
    SparsePoly coeff_x(d), coeff_y(d);
    std::vector<std::string> offending;
    for (const auto& [e, c] : comp.terms()) {
      std::int64_t ex = xpos < e.size() ? e[xpos] : 0;
      std::int64_t ey = ypos < e.size() ? e[ypos] : 0;
      if (ex + ey != 1 || ex < 0 || ey < 0) {
        std::ostringstream os;
        os << "degree " << (ex + ey) << " in (x, y)";
        offending.push_back(os.str());
        continue;
      }
      ExpVec base_e = e;
      std::vector<VarSpec> vs = comp.vars();
      if (xpos < base_e.size()) base_e[xpos] = 0;
      if (ypos < base_e.size()) base_e[ypos] = 0;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (base_e[i] != 0 && vs[i].name != SchwarzVars::base_a &&
            vs[i].name != SchwarzVars::base_b) {
          offending.push_back("coefficient depends on '" + vs[i].name + "'");
        }
      }
      SparsePoly mono = SparsePoly::monomial(d, vs, base_e, c);
      if (ex == 1) {
        coeff_x = coeff_x + mono;
      } else {
        coeff_y = coeff_y + mono;
      }
    }
    if (!offending.empty()) {
      std::string what = "component " + std::to_string(2 + r) + " is not fiberwise linear:";
      for (const auto& m : offending) what += " " + m + ";";
      throw std::domain_error(what);
    }
    if (order == FiberOrder::xy) {
      rows[r][0] = coeff_x;
      rows[r][1] = coeff_y;
    } else {
      rows[r][0] = coeff_y;
      rows[r][1] = coeff_x;
    }
  }
  return FiberMatrix{rows, order};
}

CheckResult check_involution(const PolyMap& f) {
  if (f.codomain_dim() != f.domain_dim()) {
    throw std::invalid_argument("involution check requires an endomap");
  }
  PolyMap ff = map_compose(f, f);
  bool ok = ff.is_identity();
  std::string details = ok ? "f∘f = id" : "f∘f = " + ff.str();
  return CheckResult::make("involution", "f∘f = id", ok, details);
}

CheckResult check_group_law(const PolyMap& mu, const std::string& lambda) {
  const Discriminant& d = mu.disc();
  PolyMap f1 = mu.rename_var(lambda, lambda + "1");
  PolyMap f2 = mu.rename_var(lambda, lambda + "2");
  PolyMap lhs = map_compose(f1, f2);
  SparsePoly l1l2 = SparsePoly::variable(d, unit_var(lambda + "1")) *
                    SparsePoly::variable(d, unit_var(lambda + "2"));
  PolyMap rhs = mu.substitute_param(lambda, l1l2);
  bool law = lhs == rhs;

  PolyMap at_one = mu.substitute_param(lambda, SparsePoly::constant(d, 1));
  bool unital = at_one.is_identity();

  std::string details;
  if (!law) details += "composite differs from the product-parameter action; ";
  if (!unital) details += "parameter 1 does not act as the identity; ";
  if (law && unital) details = "parameters compose multiplicatively and 1 acts trivially";
  return CheckResult::make("group_law", "mu_{l1}∘mu_{l2} = mu_{l1*l2}, mu_1 = id", law && unital,
                           details);
}

CheckResult check_equivariance(const PolyMap& mu, const PolyMap& tau, const std::string& lambda) {
  const Discriminant& d = mu.disc();
  PolyMap lhs = map_compose(tau, mu);
  SparsePoly l_inv = SparsePoly::monomial(d, {unit_var(lambda)}, ExpVec{-1}, QuadElem::one(d));
  PolyMap mu_inv = mu.substitute_param(lambda, l_inv);
  PolyMap rhs = map_compose(mu_inv, tau);
  bool ok = lhs == rhs;
  return CheckResult::make("equivariance", "tau∘mu_l = mu_{1/l}∘tau", ok,
                           ok ? "both composites agree as Laurent-polynomial maps"
                              : "lhs = " + lhs.str() + " rhs = " + rhs.str());
}

std::pair<PolyMap, LinearityReport> conjugate_involution(const PolyMap& phi, const PolyMap& tau) {
  const Discriminant& d = phi.disc();
  // Invert phi fiberwise: base must be the identity and the fiber matrix
  // determinant a nonzero constant.
  FiberMatrix C = fiber_matrix(phi, FiberOrder::xy);
  SparsePoly a = var_poly(d, SchwarzVars::base_a);
  SparsePoly b = var_poly(d, SchwarzVars::base_b);
  if (!(phi.component(0) == a && phi.component(1) == b)) {
    throw std::domain_error("conjugate_involution: phi must preserve the base pointwise");
  }
  SparsePoly det = C.det();
  if (!det.is_constant() || det.is_zero()) {
    throw std::domain_error("phi is not invertible: det C = " + det.str());
  }
  QuadElem inv_det = det.constant_value().inverse();
  SparsePoly x = var_poly(d, SchwarzVars::fiber_x);
  SparsePoly y = var_poly(d, SchwarzVars::fiber_y);
  PolyMap phi_inv(d, phi.domain(),
                  {a, b, (C.entries[1][1] * x - C.entries[0][1] * y) * inv_det,
                   (C.entries[0][0] * y - C.entries[1][0] * x) * inv_det});

  PolyMap L = map_compose(phi, map_compose(tau, phi_inv));

  LinearityReport report;
  report.linear = true;
  report.over_base_field = true;
  std::vector<std::string> names;
  for (const auto& v : L.domain()) names.push_back(v.name);
  report.matrix.assign(L.codomain_dim(),
                       std::vector<QuadElem>(names.size(), QuadElem::zero(d)));
  for (std::size_t i = 0; i < L.codomain_dim(); ++i) {
    const SparsePoly& comp = L.component(i);
    for (const auto& [e, c] : comp.terms()) {
      std::size_t nonzero_count = 0;
      std::size_t nonzero_pos = 0;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] != 0) {
          ++nonzero_count;
          nonzero_pos = k;
        }
      }
      if (nonzero_count != 1 || e[nonzero_pos] != 1) {
        report.linear = false;
        report.failure += "component " + std::to_string(i) + " carries a non-linear term; ";
        continue;
      }
      if (!c.y().is_zero()) report.over_base_field = false;
      const std::string& vn = comp.vars()[nonzero_pos].name;
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == vn) report.matrix[i][j] = c;
      }
    }
  }

  if (report.linear) {
    PolyMap LL = map_compose(L, L);
    report.involutive = LL.is_identity();
    std::ostringstream os;
    for (std::size_t i = 0; i < report.matrix.size(); ++i) {
      os << (i ? "; " : "") << "[";
      for (std::size_t j = 0; j < report.matrix[i].size(); ++j) {
        os << (j ? ", " : "") << report.matrix[i][j].str();
      }
      os << "]";
    }
    report.matrix_text = os.str();

    // Shape comparison only; the (a, b)-block is expected to be the swap and
    // the (x, y)-block diagonal and constant.
    auto entry = [&](std::size_t i, std::size_t j) { return report.matrix[i][j]; };
    bool base_swap = entry(0, 1).is_one() && entry(1, 0).is_one() && entry(0, 0).is_zero() &&
                     entry(1, 1).is_zero();
    bool cross_zero = entry(0, 2).is_zero() && entry(0, 3).is_zero() && entry(1, 2).is_zero() &&
                      entry(1, 3).is_zero() && entry(2, 0).is_zero() && entry(2, 1).is_zero() &&
                      entry(3, 0).is_zero() && entry(3, 1).is_zero();
    bool fiber_diag = entry(2, 3).is_zero() && entry(3, 2).is_zero();
    if (base_swap && cross_zero && fiber_diag) {
      report.shape_note = "base block is the (a, b) swap; fiber block is diag(" +
                          entry(2, 2).str() + ", " + entry(3, 3).str() + ")";
    } else {
      report.shape_note = "shape differs from base-swap/diagonal-fiber; matrix: " +
                          report.matrix_text;
    }
  } else {
    report.involutive = map_compose(L, L).is_identity();
    report.shape_note = "not linear";
  }
  return {L, report};
}

}  // namespace quadtwist
