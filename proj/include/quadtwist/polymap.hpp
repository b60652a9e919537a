#pragma once

#include <map>
#include <string>
#include <vector>

#include "quadtwist/polynomial.hpp"

namespace quadtwist {

/// Tuple of polynomials defining a morphism of affine spaces. The domain is
/// the declared coordinate list; any further variables appearing in the
/// components (torus parameters, formal constants) pass through composition
/// untouched. When a coordinate has a conjugate partner, composition
/// substitutes the sigma image of the incoming component for the partner,
/// so maps on K^n written in (x, sigma x) coordinates compose correctly.
class PolyMap {
 public:
  PolyMap(Discriminant disc, std::vector<VarSpec> domain, std::vector<SparsePoly> components);

  static PolyMap identity(const Discriminant& d, const std::vector<VarSpec>& coords);

  const Discriminant& disc() const { return disc_; }
  const std::vector<VarSpec>& domain() const { return domain_; }
  std::size_t domain_dim() const { return domain_.size(); }
  std::size_t codomain_dim() const { return components_.size(); }
  const std::vector<SparsePoly>& components() const { return components_; }
  const SparsePoly& component(std::size_t i) const { return components_.at(i); }

  bool is_identity() const;

  /// Substitutes a non-coordinate parameter (e.g. the torus variable) in
  /// every component; the domain is unchanged.
  PolyMap substitute_param(const std::string& name, const SparsePoly& value) const;

  /// Renames a variable everywhere (domain, partners, components).
  PolyMap rename_var(const std::string& from, const std::string& to) const;

  /// Exact evaluation. Values for conjugate partners of coordinates are
  /// filled in by conjugation when absent; unit parameters must be provided
  /// and nonzero.
  std::vector<QuadElem> eval(std::map<std::string, QuadElem> point) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.disc_ == b.disc_ && a.domain_ == b.domain_ && a.components_ == b.components_;
  }
  friend bool operator!=(const PolyMap& a, const PolyMap& b) { return !(a == b); }

  std::string str() const;

 private:
  Discriminant disc_;
  std::vector<VarSpec> domain_;
  std::vector<SparsePoly> components_;
};

/// (f . g)(v) = f(g(v)); g's codomain dimension must match f's domain
/// dimension. Associative, with the identity map neutral.
PolyMap map_compose(const PolyMap& f, const PolyMap& g);

}  // namespace quadtwist
