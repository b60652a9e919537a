#include "quadtwist/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace quadtwist {

namespace {

std::string kind_str(VarKind k) { return k == VarKind::affine ? "affine" : "unit"; }

VarKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "affine") return VarKind::affine;
  if (s == "unit") return VarKind::unit;
  throw std::invalid_argument(where + ": unknown variable kind '" + s + "'");
}

Rational parse_canonical(const OrderedJson& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

}  // namespace

OrderedJson polymap_to_json(const PolyMap& f) {
  OrderedJson j;
  j["alpha"] = f.disc().alpha().str();

  // Variable table: union of the domain and every component's variables.
  std::vector<VarSpec> table;
  auto add_var = [&](const VarSpec& v) {
    for (const auto& w : table) {
      if (w.name == v.name) {
        if (!(w == v)) {
          throw std::invalid_argument("conflicting declarations for variable '" + v.name + "'");
        }
        return;
      }
    }
    table.push_back(v);
  };
  for (const auto& v : f.domain()) add_var(v);
  for (const auto& c : f.components()) {
    for (const auto& v : c.vars()) add_var(v);
  }
  std::sort(table.begin(), table.end(),
            [](const VarSpec& a, const VarSpec& b) { return a.name < b.name; });

  OrderedJson vars = OrderedJson::array();
  for (const auto& v : table) {
    OrderedJson vj;
    vj["name"] = v.name;
    vj["kind"] = kind_str(v.kind);
    if (!v.partner.empty()) vj["partner"] = v.partner;
    vars.push_back(vj);
  }
  j["vars"] = vars;

  OrderedJson dom = OrderedJson::array();
  for (const auto& v : f.domain()) dom.push_back(v.name);
  j["domain_vars"] = dom;

  OrderedJson comps = OrderedJson::array();
  for (const auto& c : f.components()) {
    OrderedJson terms = OrderedJson::array();
    for (const auto& [e, coeff] : c.terms()) {
      OrderedJson exps = OrderedJson::array();
      for (std::size_t i = 0; i < table.size(); ++i) {
        std::int64_t exp = 0;
        for (std::size_t k = 0; k < c.vars().size(); ++k) {
          if (c.vars()[k].name == table[i].name) exp = e[k];
        }
        exps.push_back(exp);
      }
      terms.push_back(OrderedJson::array({exps, coeff.x().str(), coeff.y().str()}));
    }
    comps.push_back(terms);
  }
  j["components"] = comps;
  return j;
}

PolyMap polymap_from_json(const OrderedJson& j) {
  for (const char* key : {"alpha", "vars", "domain_vars", "components"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("map: missing field '") + key + "'");
  }
  Discriminant d(parse_canonical(j.at("alpha"), "alpha"));

  std::vector<VarSpec> table;
  const OrderedJson& vars = j.at("vars");
  if (!vars.is_array()) throw std::invalid_argument("vars: expected an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const OrderedJson& vj = vars.at(i);
    std::string where = "vars[" + std::to_string(i) + "]";
    if (!vj.contains("name") || !vj.contains("kind")) {
      throw std::invalid_argument(where + ": needs 'name' and 'kind'");
    }
    VarSpec v;
    v.name = vj.at("name").get<std::string>();
    v.kind = parse_kind(vj.at("kind").get<std::string>(), where);
    if (vj.contains("partner")) v.partner = vj.at("partner").get<std::string>();
    if (v.kind == VarKind::unit && !v.partner.empty()) {
      throw std::invalid_argument(where + ": unit variable cannot carry a partner");
    }
    table.push_back(v);
  }
  // Partner symmetry.
  for (const auto& v : table) {
    if (v.partner.empty()) continue;
    bool ok = false;
    for (const auto& w : table) {
      if (w.name == v.partner) ok = w.partner == v.name;
    }
    if (!ok) {
      throw std::invalid_argument("vars: partner of '" + v.name + "' is not declared symmetrically");
    }
  }

  std::vector<VarSpec> domain;
  for (const auto& nj : j.at("domain_vars")) {
    std::string name = nj.get<std::string>();
    bool found = false;
    for (const auto& v : table) {
      if (v.name == name) {
        domain.push_back(v);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("domain_vars: undeclared variable '" + name + "'");
  }

  const OrderedJson& comps = j.at("components");
  if (!comps.is_array()) throw std::invalid_argument("components: expected an array");
  std::vector<SparsePoly> components;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    SparsePoly p(d);
    const OrderedJson& terms = comps.at(ci);
    std::string cwhere = "components[" + std::to_string(ci) + "]";
    if (!terms.is_array()) throw std::invalid_argument(cwhere + ": expected an array of terms");
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
      const OrderedJson& term = terms.at(ti);
      std::string where = cwhere + "[" + std::to_string(ti) + "]";
      if (!term.is_array() || term.size() != 3) {
        throw std::invalid_argument(where + ": term must be [exponents, coeff_x, coeff_y]");
      }
      const OrderedJson& exps = term.at(0);
      if (!exps.is_array() || exps.size() != table.size()) {
        throw std::invalid_argument(where + ": exponent vector must have one entry per variable");
      }
      ExpVec e;
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!exps.at(i).is_number_integer()) {
          throw std::invalid_argument(where + ": exponents must be integers");
        }
        std::int64_t exp = exps.at(i).get<std::int64_t>();
        if (exp < 0 && table[i].kind == VarKind::affine) {
          throw std::invalid_argument(where + ": negative exponent on affine variable '" +
                                      table[i].name + "'");
        }
        e.push_back(exp);
      }
      Rational cx = parse_canonical(term.at(1), where + ".coeff_x");
      Rational cy = parse_canonical(term.at(2), where + ".coeff_y");
      try {
        p = p + SparsePoly::monomial(d, table, e, QuadElem(cx, cy, d));
      } catch (const std::exception& ex) {
        throw std::invalid_argument(where + ": " + ex.what());
      }
    }
    components.push_back(std::move(p));
  }
  return PolyMap(d, std::move(domain), std::move(components));
}

PolyMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open map file '" + path + "'");
  OrderedJson j;
  try {
    j = OrderedJson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
  return polymap_from_json(j);
}

void save_map_file(const PolyMap& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write map file '" + path + "'");
  out << polymap_to_json(f).dump(2) << "\n";
}

OrderedJson kstructure_to_json(const KStructure& ks) {
  OrderedJson j;
  j["ambient_dim"] = ks.ambient_dim;
  OrderedJson basis = OrderedJson::array();
  for (const auto& v : ks.basis) {
    OrderedJson vec = OrderedJson::array();
    for (const auto& z : v) {
      vec.push_back(OrderedJson::array({z.x().str(), z.y().str()}));
    }
    basis.push_back(vec);
  }
  j["basis"] = basis;
  return j;
}

OrderedJson trace_to_json(const ProofTrace& trace) {
  OrderedJson steps = OrderedJson::array();
  for (const auto& s : trace.steps) {
    OrderedJson sj;
    sj["kind"] = step_kind_str(s.kind);
    sj["target"] = s.target;
    sj["before"] = s.before;
    sj["after"] = s.after;
    if (!s.eliminated.empty()) sj["eliminated"] = s.eliminated;
    sj["anchor"] = s.anchor;
    steps.push_back(sj);
  }
  OrderedJson j;
  j["steps"] = steps;
  return j;
}

}  // namespace quadtwist
