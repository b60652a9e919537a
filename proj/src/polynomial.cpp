#include "quadtwist/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quadtwist {

VarSpec affine_var(std::string name) { return VarSpec{std::move(name), VarKind::affine, ""}; }

VarSpec affine_pair_var(std::string name, std::string partner) {
  return VarSpec{std::move(name), VarKind::affine, std::move(partner)};
}

VarSpec unit_var(std::string name) { return VarSpec{std::move(name), VarKind::unit, ""}; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("exponent overflow in addition");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("exponent overflow in multiplication");
  }
  return r;
}

bool GrlexDesc::operator()(const ExpVec& a, const ExpVec& b) const {
  std::int64_t da = 0, db = 0;
  for (std::int64_t e : a) da = checked_add(da, e);
  for (std::int64_t e : b) db = checked_add(db, e);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

std::string mono_str(const std::vector<VarSpec>& vars, const ExpVec& e) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i].name;
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

// Union of two name-sorted variable lists; same-name entries must agree on
// kind and partner.
std::vector<VarSpec> merge_vars(const std::vector<VarSpec>& a, const std::vector<VarSpec>& b) {
  std::vector<VarSpec> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].name < b[j].name)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].name < a[i].name) {
      out.push_back(b[j++]);
    } else {
      if (!(a[i] == b[j])) {
        throw std::invalid_argument("conflicting declarations for variable '" + a[i].name + "'");
      }
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

ExpVec rekey(const ExpVec& e, const std::vector<VarSpec>& from, const std::vector<VarSpec>& to) {
  ExpVec out(to.size(), 0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    while (to[j].name != from[i].name) ++j;
    out[j] = e[i];
  }
  return out;
}

}  // namespace

void SparsePoly::check_var(const VarSpec& v) {
  if (v.name.empty()) throw std::invalid_argument("variable with empty name");
  if (v.partner == v.name) throw std::invalid_argument("variable '" + v.name + "' partnered with itself");
  if (v.kind == VarKind::unit && !v.partner.empty()) {
    throw std::invalid_argument("unit variable '" + v.name + "' cannot have a conjugate partner");
  }
}

SparsePoly SparsePoly::constant(const QuadElem& c) {
  SparsePoly p(c.disc());
  if (!c.is_zero()) p.terms_.emplace(ExpVec{}, c);
  return p;
}

SparsePoly SparsePoly::constant(const Discriminant& d, const Rational& c) {
  return constant(QuadElem(c, 0, d));
}

SparsePoly SparsePoly::variable(const Discriminant& d, const VarSpec& v) {
  return monomial(d, {v}, ExpVec{1}, QuadElem::one(d));
}

SparsePoly SparsePoly::monomial(const Discriminant& d, std::vector<VarSpec> vars, ExpVec exps,
                                const QuadElem& coeff) {
  if (vars.size() != exps.size()) {
    throw std::invalid_argument("monomial: variable/exponent count mismatch");
  }
  std::vector<std::size_t> idx(vars.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return vars[a].name < vars[b].name; });
  SparsePoly p(d);
  p.vars_.reserve(vars.size());
  ExpVec e;
  e.reserve(vars.size());
  for (std::size_t i : idx) {
    check_var(vars[i]);
    if (!p.vars_.empty() && p.vars_.back().name == vars[i].name) {
      throw std::invalid_argument("duplicate variable '" + vars[i].name + "' in monomial");
    }
    p.vars_.push_back(vars[i]);
    e.push_back(exps[i]);
  }
  p.insert_term(e, coeff);
  p.normalize();
  return p;
}

void SparsePoly::insert_term(const ExpVec& e, const QuadElem& c) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (e[i] < 0 && vars_[i].kind == VarKind::affine) {
      throw std::domain_error("negative exponent on affine variable '" + vars_[i].name + "'");
    }
  }
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  QuadElem sum = it->second + c;
  if (sum.is_zero()) {
    terms_.erase(it);
  } else {
    it->second = sum;
  }
}

void SparsePoly::normalize() {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) used[i] = true;
    }
  }
  bool all_used = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
  if (all_used) return;

  std::vector<VarSpec> kept;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) kept.push_back(vars_[i]);
  }
  TermMap shrunk;
  for (const auto& [e, c] : terms_) {
    ExpVec ne;
    ne.reserve(kept.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (used[i]) ne.push_back(e[i]);
    }
    shrunk.emplace(std::move(ne), c);
  }
  vars_ = std::move(kept);
  terms_ = std::move(shrunk);
}

QuadElem SparsePoly::constant_value() const {
  if (terms_.empty()) return QuadElem::zero(disc_);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

bool SparsePoly::depends_on(const std::string& var) const {
  for (const auto& v : vars_) {
    if (v.name == var) return true;
  }
  return false;
}

std::int64_t SparsePoly::degree_in(const std::string& var) const {
  std::size_t pos = vars_.size();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == var) pos = i;
  }
  if (pos == vars_.size()) return 0;
  std::int64_t d = std::numeric_limits<std::int64_t>::min();
  for (const auto& [e, c] : terms_) d = std::max(d, e[pos]);
  return terms_.empty() ? 0 : d;
}

std::int64_t SparsePoly::total_degree() const {
  std::int64_t d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::int64_t s = 0;
    for (std::int64_t x : e) s = checked_add(s, x);
    d = first ? s : std::max(d, s);
    first = false;
  }
  return d;
}

QuadElem SparsePoly::coeff(const std::map<std::string, std::int64_t>& mono) const {
  ExpVec e(vars_.size(), 0);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = mono.find(vars_[i].name);
    if (it != mono.end()) e[i] = it->second;
  }
  for (const auto& [name, exp] : mono) {
    if (exp != 0 && !depends_on(name)) return QuadElem::zero(disc_);
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? QuadElem::zero(disc_) : it->second;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  if (disc_ != o.disc_) throw std::invalid_argument("mismatched discriminants in +");
  SparsePoly out(disc_);
  out.vars_ = merge_vars(vars_, o.vars_);
  for (const auto& [e, c] : terms_) out.insert_term(rekey(e, vars_, out.vars_), c);
  for (const auto& [e, c] : o.terms_) out.insert_term(rekey(e, o.vars_, out.vars_), c);
  out.normalize();
  return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  if (disc_ != o.disc_) throw std::invalid_argument("mismatched discriminants in *");
  SparsePoly out(disc_);
  out.vars_ = merge_vars(vars_, o.vars_);
  for (const auto& [ea, ca] : terms_) {
    ExpVec ka = rekey(ea, vars_, out.vars_);
    for (const auto& [eb, cb] : o.terms_) {
      ExpVec kb = rekey(eb, o.vars_, out.vars_);
      ExpVec e(out.vars_.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ka[i], kb[i]);
      out.insert_term(e, ca * cb);
    }
  }
  out.normalize();
  return out;
}

SparsePoly SparsePoly::operator*(const QuadElem& c) const {
  if (c.is_zero()) return SparsePoly(disc_);
  SparsePoly p = *this;
  for (auto& [e, v] : p.terms_) v = v * c;
  return p;
}

SparsePoly SparsePoly::operator*(const Rational& c) const {
  return *this * QuadElem(c, 0, disc_);
}

SparsePoly SparsePoly::pow(std::int64_t e) const {
  if (e < 0) {
    if (e == std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("exponent overflow");
    }
    if (terms_.size() != 1) {
      throw std::domain_error("negative power of non-monomial polynomial");
    }
    const auto& [exps, c] = *terms_.begin();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (exps[i] != 0 && vars_[i].kind == VarKind::affine) {
        throw std::domain_error("negative exponent on affine variable '" + vars_[i].name +
                                "' through inversion");
      }
    }
    ExpVec inv(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) inv[i] = checked_mul(exps[i], -1);
    SparsePoly base = monomial(disc_, vars_, inv, c.inverse());
    return base.pow(-e);
  }
  SparsePoly acc = constant(disc_, Rational(1));
  SparsePoly base = *this;
  std::uint64_t n = static_cast<std::uint64_t>(e);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    if (n >>= 1; n > 0) base = base * base;
  }
  return acc;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  return a.disc_ == b.disc_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

SparsePoly SparsePoly::compose(const std::map<std::string, SparsePoly>& subst) const {
  for (const auto& [name, p] : subst) {
    if (p.disc() != disc_) {
      throw std::invalid_argument("mismatched discriminant in substitution for '" + name + "'");
    }
  }
  SparsePoly out(disc_);
  for (const auto& [e, c] : terms_) {
    SparsePoly term = constant(c);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = subst.find(vars_[i].name);
      SparsePoly base = it != subst.end() ? it->second : variable(disc_, vars_[i]);
      term = term * base.pow(e[i]);
    }
    out = out + term;
  }
  return out;
}

QuadElem SparsePoly::eval(const std::map<std::string, QuadElem>& point) const {
  for (const auto& v : vars_) {
    auto it = point.find(v.name);
    if (it == point.end()) {
      throw std::invalid_argument("no value for variable '" + v.name + "'");
    }
    if (v.kind == VarKind::unit && it->second.is_zero()) {
      throw std::invalid_argument("zero assigned to unit variable '" + v.name + "'");
    }
  }
  QuadElem acc = QuadElem::zero(disc_);
  for (const auto& [e, c] : terms_) {
    QuadElem term = c;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      term = term * point.at(vars_[i].name).pow(e[i]);
    }
    acc = acc + term;
  }
  return acc;
}

SparsePoly SparsePoly::sigma() const {
  // Partners that do not occur yet are introduced so exponents can swap onto
  // them; normalize() drops whichever end up unused.
  std::vector<VarSpec> extended = vars_;
  for (const auto& v : vars_) {
    if (v.partner.empty()) continue;
    bool present = false;
    for (const auto& w : extended) present = present || w.name == v.partner;
    if (!present) extended.push_back(VarSpec{v.partner, v.kind, v.name});
  }
  std::sort(extended.begin(), extended.end(),
            [](const VarSpec& a, const VarSpec& b) { return a.name < b.name; });

  std::vector<std::size_t> target(extended.size());
  for (std::size_t i = 0; i < extended.size(); ++i) {
    target[i] = i;
    if (!extended[i].partner.empty()) {
      for (std::size_t j = 0; j < extended.size(); ++j) {
        if (extended[j].name == extended[i].partner) target[i] = j;
      }
    }
  }

  SparsePoly out(disc_);
  out.vars_ = extended;
  for (const auto& [e, c] : terms_) {
    ExpVec base = rekey(e, vars_, extended);
    ExpVec ne(extended.size(), 0);
    for (std::size_t i = 0; i < extended.size(); ++i) {
      std::int64_t exp = base[i];
      if (extended[i].kind == VarKind::unit) {
        ne[i] = checked_mul(exp, -1);
      } else {
        ne[target[i]] = exp;
      }
    }
    out.insert_term(ne, c.conjugate());
  }
  out.normalize();
  return out;
}

std::map<std::int64_t, SparsePoly> SparsePoly::weight_decompose(const std::string& unit_name) const {
  std::size_t pos = vars_.size();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == unit_name) {
      if (vars_[i].kind != VarKind::unit) {
        throw std::invalid_argument("'" + unit_name + "' is not a unit variable");
      }
      pos = i;
    }
  }
  std::map<std::int64_t, SparsePoly> parts;
  for (const auto& [e, c] : terms_) {
    std::int64_t w = pos == vars_.size() ? 0 : e[pos];
    auto [it, inserted] = parts.try_emplace(w, SparsePoly(disc_));
    if (inserted) it->second.vars_ = vars_;
    ExpVec stripped = e;
    if (pos != vars_.size()) stripped[pos] = 0;
    it->second.insert_term(stripped, c);
  }
  for (auto& [w, p] : parts) p.normalize();
  if (parts.empty()) parts.emplace(0, SparsePoly(disc_));
  return parts;
}

SparsePoly SparsePoly::filter_weight(const std::string& unit_name, std::int64_t w) const {
  std::size_t pos = vars_.size();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == unit_name) {
      if (vars_[i].kind != VarKind::unit) {
        throw std::invalid_argument("'" + unit_name + "' is not a unit variable");
      }
      pos = i;
    }
  }
  SparsePoly out(disc_);
  out.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    std::int64_t tw = pos == vars_.size() ? 0 : e[pos];
    if (tw == w) out.insert_term(e, c);
  }
  out.normalize();
  return out;
}

std::string SparsePoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono = mono_str(vars_, e);
    std::string piece;
    bool negative = false;
    if (!c.y().is_zero()) {
      piece = "(" + c.str() + ")";
      if (!mono.empty()) piece += "*" + mono;
    } else {
      Rational r = c.x();
      negative = r.sign() < 0;
      Rational mag = negative ? -r : r;
      if (mono.empty()) {
        piece = mag.str();
      } else if (mag.is_one()) {
        piece = mono;
      } else {
        piece = mag.str() + "*" + mono;
      }
    }
    if (first) {
      s = negative ? "-" + piece : piece;
      first = false;
    } else {
      s += (negative ? " - " : " + ") + piece;
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.str(); }

NormForm rewrite_norm(const SparsePoly& p, const std::string& x_name, const std::string& xb_name) {
  for (const auto& v : p.vars()) {
    if (v.name != x_name && v.name != xb_name) {
      throw std::invalid_argument("rewrite_norm: polynomial involves '" + v.name +
                                  "' outside the pair (" + x_name + ", " + xb_name + ")");
    }
  }
  NormForm nf{false, 0, SparsePoly(p.disc()), "z", ""};
  if (p.is_zero()) {
    nf.member = true;
    return nf;
  }

  bool have_shift = false;
  std::int64_t shift = 0;
  std::vector<std::string> offending;
  std::vector<std::pair<std::int64_t, QuadElem>> u_terms;
  for (const auto& [e, c] : p.terms()) {
    std::int64_t k = 0, l = 0;
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
      if (p.vars()[i].name == x_name) k = e[i];
      if (p.vars()[i].name == xb_name) l = e[i];
    }
    std::int64_t s = l - k;
    if (!have_shift) {
      shift = s;
      have_shift = true;
    } else if (s != shift) {
      offending.push_back(mono_str(p.vars(), e));
    }
    u_terms.emplace_back(std::min(k, l), c);
  }
  if (!offending.empty()) {
    std::string what = "rewrite_norm: mixed shifts; offending monomials:";
    for (const auto& m : offending) what += " " + m;
    throw std::domain_error(what);
  }
  if (shift != 0 && shift != 3) {
    nf.reason = "uniform shift " + std::to_string(shift) + " outside {0, 3}";
    return nf;
  }
  nf.member = true;
  nf.shift = shift;
  VarSpec z = affine_var(nf.zvar);
  for (const auto& [deg, c] : u_terms) {
    nf.u = nf.u + SparsePoly::monomial(p.disc(), {z}, ExpVec{deg}, c);
  }
  return nf;
}

}  // namespace quadtwist
