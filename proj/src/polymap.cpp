#include "quadtwist/polymap.hpp"

#include <sstream>
#include <stdexcept>

namespace quadtwist {

PolyMap::PolyMap(Discriminant disc, std::vector<VarSpec> domain,
                 std::vector<SparsePoly> components)
    : disc_(std::move(disc)), domain_(std::move(domain)), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.disc() != disc_) throw std::invalid_argument("component discriminant mismatch");
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    for (std::size_t j = i + 1; j < domain_.size(); ++j) {
      if (domain_[i].name == domain_[j].name) {
        throw std::invalid_argument("duplicate domain variable '" + domain_[i].name + "'");
      }
    }
  }
}

PolyMap PolyMap::identity(const Discriminant& d, const std::vector<VarSpec>& coords) {
  std::vector<SparsePoly> comps;
  comps.reserve(coords.size());
  for (const auto& v : coords) comps.push_back(SparsePoly::variable(d, v));
  return PolyMap(d, coords, std::move(comps));
}

bool PolyMap::is_identity() const {
  if (components_.size() != domain_.size()) return false;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (components_[i] != SparsePoly::variable(disc_, domain_[i])) return false;
  }
  return true;
}

PolyMap PolyMap::substitute_param(const std::string& name, const SparsePoly& value) const {
  for (const auto& v : domain_) {
    if (v.name == name) {
      throw std::invalid_argument("'" + name + "' is a coordinate, not a parameter");
    }
  }
  std::map<std::string, SparsePoly> subst{{name, value}};
  std::vector<SparsePoly> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(c.compose(subst));
  return PolyMap(disc_, domain_, std::move(comps));
}

PolyMap PolyMap::rename_var(const std::string& from, const std::string& to) const {
  auto rename_spec = [&](VarSpec v) {
    if (v.name == from) v.name = to;
    if (v.partner == from) v.partner = to;
    return v;
  };
  std::vector<VarSpec> domain;
  domain.reserve(domain_.size());
  for (const auto& v : domain_) domain.push_back(rename_spec(v));

  std::vector<SparsePoly> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) {
    std::map<std::string, SparsePoly> subst;
    for (const auto& v : c.vars()) {
      if (v.name == from || v.partner == from) {
        subst.emplace(v.name, SparsePoly::variable(disc_, rename_spec(v)));
      }
    }
    comps.push_back(c.compose(subst));
  }
  return PolyMap(disc_, std::move(domain), std::move(comps));
}

std::vector<QuadElem> PolyMap::eval(std::map<std::string, QuadElem> point) const {
  for (const auto& v : domain_) {
    if (!v.partner.empty() && point.count(v.name) && !point.count(v.partner)) {
      point.emplace(v.partner, point.at(v.name).conjugate());
    }
  }
  std::vector<QuadElem> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.eval(point));
  return out;
}

std::string PolyMap::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) os << ", ";
    os << components_[i].str();
  }
  os << ")";
  return os.str();
}

PolyMap map_compose(const PolyMap& f, const PolyMap& g) {
  if (f.disc() != g.disc()) throw std::invalid_argument("mismatched discriminants in composition");
  if (g.codomain_dim() != f.domain_dim()) {
    throw std::invalid_argument("dimension mismatch: composing domain dimension " +
                                std::to_string(f.domain_dim()) + " with codomain dimension " +
                                std::to_string(g.codomain_dim()));
  }
  std::map<std::string, SparsePoly> subst;
  for (std::size_t i = 0; i < f.domain_dim(); ++i) {
    const VarSpec& v = f.domain()[i];
    subst.emplace(v.name, g.component(i));
    if (!v.partner.empty()) {
      subst.emplace(v.partner, g.component(i).sigma());
    }
  }
  std::vector<SparsePoly> comps;
  comps.reserve(f.codomain_dim());
  for (const auto& c : f.components()) comps.push_back(c.compose(subst));
  return PolyMap(f.disc(), g.domain(), std::move(comps));
}

}  // namespace quadtwist
