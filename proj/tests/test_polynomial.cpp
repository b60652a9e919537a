#include <doctest.h>

#include "quadtwist/polynomial.hpp"
#include "quadtwist/sampling.hpp"

using namespace quadtwist;

namespace {

const Discriminant d2{Rational(2)};

SparsePoly var(const char* name) { return SparsePoly::variable(d2, affine_var(name)); }

SparsePoly pair_var(const char* name, const char* partner) {
  return SparsePoly::variable(d2, affine_pair_var(name, partner));
}

SparsePoly unit(const char* name, std::int64_t e = 1) {
  return SparsePoly::monomial(d2, {unit_var(name)}, ExpVec{e}, QuadElem::one(d2));
}

// Small random polynomial in x, xb (paired) and the unit l.
SparsePoly random_poly(Sampler& s, bool with_unit = true) {
  SparsePoly p(d2);
  int terms = static_cast<int>(s.int_in(0, 4));
  for (int i = 0; i < terms; ++i) {
    std::vector<VarSpec> vs{affine_pair_var("x", "xb"), affine_pair_var("xb", "x")};
    ExpVec e{s.int_in(0, 3), s.int_in(0, 3)};
    if (with_unit) {
      vs.push_back(unit_var("l"));
      e.push_back(s.int_in(-3, 3));
    }
    p = p + SparsePoly::monomial(d2, vs, e, QuadElem(s.rational(9, 9), s.rational(9, 9), d2));
  }
  return p;
}

}  // namespace

TEST_CASE("multiplication") {
  SparsePoly x = pair_var("x", "xb"), xb = pair_var("xb", "x");
  CHECK((x + xb) * (x - xb) == x * x - xb * xb);
  Sampler s(1);
  SparsePoly p = random_poly(s);
  CHECK((p * SparsePoly(d2)).is_zero());
  // t^2 = alpha: (t x)(t x) = 2 x^2.
  SparsePoly tx = x * QuadElem::t(d2);
  CHECK(tx * tx == x * x * Rational(2));
}

TEST_CASE("canonical form drops unused variables") {
  SparsePoly x = var("x"), y = var("y");
  SparsePoly p = x + y - y;
  CHECK(p == x);
  CHECK(p.vars().size() == 1);
  CHECK(p.str() == "x");
}

TEST_CASE("string form") {
  SparsePoly x = pair_var("x", "xb"), xb = pair_var("xb", "x");
  SparsePoly p = x * x * xb.pow(5) * QuadElem(7, 5, d2) + unit("l", -3);
  CHECK(p.str() == "(7 + 5*t)*x^2*xb^5 + l^-3");
  CHECK(SparsePoly(d2).str() == "0");
  CHECK((x - xb * Rational(3)).str() == "x - 3*xb");
}

TEST_CASE("composition") {
  SparsePoly x = var("x");
  SparsePoly l2x = unit("l", 2) * x;
  CHECK((x * x).compose({{"x", l2x}}) == unit("l", 4) * x * x);

  // Weights cancel on the invariant z = x*xb.
  SparsePoly xp = pair_var("x", "xb"), xbp = pair_var("xb", "x");
  SparsePoly z = xp * xbp;
  CHECK(z.compose({{"x", unit("l", 2) * xp}, {"xb", unit("l", -2) * xbp}}) == z);

  SparsePoly y = var("y");
  SparsePoly res = (y * y).compose({{"y", y * Rational(3) - x}});
  CHECK(res == y * y * Rational(9) - x * y * Rational(6) + x * x);

  // Substituting the identity is the identity.
  Sampler s(17);
  for (int i = 0; i < 50; ++i) {
    SparsePoly p = random_poly(s);
    CHECK(p.compose({}) == p);
  }
}

TEST_CASE("composition guards") {
  SparsePoly x = var("x");
  SparsePoly l = unit("l");
  // A unit variable substituted by an affine monomial cannot take negative
  // exponents.
  CHECK_THROWS_AS(unit("l", -2).compose({{"l", x}}), std::domain_error);
  // Non-monomial substitution into a negative power.
  CHECK_THROWS_AS(unit("l", -1).compose({{"l", l + x}}), std::domain_error);
  // Positive powers are fine.
  CHECK(unit("l", 2).compose({{"l", x}}) == x * x);
}

TEST_CASE("sigma") {
  SparsePoly x = pair_var("x", "xb"), xb = pair_var("xb", "x");
  CHECK((x * QuadElem(0, 1, d2)).sigma() == xb * QuadElem(0, -1, d2));
  CHECK(unit("l", 3).sigma() == unit("l", -3));
  CHECK((x * xb).sigma() == x * xb);
  CHECK(var("a").sigma() == var("a"));  // unpaired affine variables are fixed

  Sampler s(23);
  for (int i = 0; i < 100; ++i) {
    SparsePoly p = random_poly(s), q = random_poly(s);
    CHECK(p.sigma().sigma() == p);
    CHECK((p * q).sigma() == p.sigma() * q.sigma());
    CHECK((p + q).sigma() == p.sigma() + q.sigma());
  }
}

TEST_CASE("weight decomposition") {
  SparsePoly x = var("x"), y = var("y");
  SparsePoly p = unit("l", 6) * x + y;
  auto parts = p.weight_decompose("l");
  CHECK(parts.size() == 2);
  CHECK(parts.at(6) == x);
  CHECK(parts.at(0) == y);

  CHECK(p.filter_weight("l", 6) == unit("l", 6) * x);
  CHECK(p.filter_weight("l", 0) == y);
  CHECK(p.filter_weight("l", 2).is_zero());

  // A polynomial without the unit variable is entirely weight 0.
  SparsePoly q = x * y;
  CHECK(q.filter_weight("l", 0) == q);
  CHECK(q.filter_weight("l", 1).is_zero());
  auto qparts = q.weight_decompose("l");
  CHECK(qparts.size() == 1);
  CHECK(qparts.at(0) == q);

  SparsePoly c = SparsePoly::constant(d2, 5);
  CHECK(c.weight_decompose("l").at(0) == c);

  // Parts recombine to the input.
  Sampler s(29);
  for (int i = 0; i < 100; ++i) {
    SparsePoly r = random_poly(s);
    auto ps = r.weight_decompose("l");
    SparsePoly sum(d2);
    for (const auto& [w, part] : ps) {
      CHECK_FALSE(part.depends_on("l"));
      sum = sum + unit("l", w) * part;
      CHECK(r.filter_weight("l", w) == unit("l", w) * part);
    }
    CHECK(sum == r);
  }
}

TEST_CASE("norm rewriting") {
  SparsePoly x = pair_var("x", "xb"), xb = pair_var("xb", "x");
  SparsePoly z = SparsePoly::variable(d2, affine_var("z"));

  NormForm nf = rewrite_norm(x * x * xb.pow(5), "x", "xb");
  CHECK(nf.member);
  CHECK(nf.shift == 3);
  CHECK(nf.u == z * z);

  NormForm nf2 = rewrite_norm(x * xb, "x", "xb");
  CHECK(nf2.member);
  CHECK(nf2.shift == 0);
  CHECK(nf2.u == z);

  NormForm nf3 = rewrite_norm(x * x, "x", "xb");
  CHECK_FALSE(nf3.member);

  CHECK_THROWS_AS(rewrite_norm(x + xb, "x", "xb"), std::domain_error);
  CHECK_THROWS_AS(rewrite_norm(x * var("y"), "x", "xb"), std::invalid_argument);

  // Round-trip: substituting z = x*xb reproduces the input.
  Sampler s(31);
  for (int i = 0; i < 100; ++i) {
    SparsePoly u(d2);
    std::int64_t deg = s.int_in(0, 4);
    for (std::int64_t k = 0; k <= deg; ++k) {
      u = u + SparsePoly::monomial(d2, {affine_var("z")}, ExpVec{k},
                                   QuadElem(s.rational(9, 9), s.rational(9, 9), d2));
    }
    std::int64_t shift = s.int_in(0, 1) ? 3 : 0;
    SparsePoly p = xb.pow(shift) * u.compose({{"z", x * xb}});
    if (p.is_zero()) continue;
    NormForm round = rewrite_norm(p, "x", "xb");
    CHECK(round.member);
    CHECK(round.shift == shift);
    CHECK(xb.pow(round.shift) * round.u.compose({{"z", x * xb}}) == p);
  }
}

TEST_CASE("evaluation") {
  // x^2 - alpha y^2 at the norm-one point (3, 2).
  SparsePoly x = var("x"), y = var("y");
  SparsePoly norm_form = x * x - y * y * Rational(2);
  CHECK(norm_form.eval({{"x", QuadElem(3, 0, d2)}, {"y", QuadElem(2, 0, d2)}}) ==
        QuadElem::one(d2));

  CHECK(SparsePoly(d2).eval({}) == QuadElem::zero(d2));

  SparsePoly xp = pair_var("x", "xb"), xbp = pair_var("xb", "x");
  QuadElem v(1, 1, d2);
  CHECK((xp * xbp).eval({{"x", v}, {"xb", v.conjugate()}}) == -QuadElem::one(d2));

  CHECK_THROWS_AS(unit("l").eval({{"l", QuadElem::zero(d2)}}), std::invalid_argument);
  CHECK_THROWS_AS(var("x").eval({}), std::invalid_argument);
}

TEST_CASE("property: ring axioms") {
  Sampler s(37);
  for (int i = 0; i < 150; ++i) {
    SparsePoly p = random_poly(s), q = random_poly(s), r = random_poly(s);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + q == q + p);
    CHECK(p - p == SparsePoly(d2));
  }
}

TEST_CASE("property: evaluation is a homomorphism") {
  Sampler s(41);
  for (int i = 0; i < 500; ++i) {
    SparsePoly p = random_poly(s), q = random_poly(s);
    QuadElem xv = s.quad(d2);
    QuadElem lv = s.nonzero_quad(d2);
    std::map<std::string, QuadElem> pt{
        {"x", xv}, {"xb", xv.conjugate()}, {"l", lv}};
    CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
    CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
  }
}

TEST_CASE("property: evaluating compose equals composing evaluations") {
  Sampler s(43);
  SparsePoly x = var("x");
  for (int i = 0; i < 100; ++i) {
    // p(x), then x -> g(x).
    SparsePoly p(d2), g(d2);
    for (int k = 0, n = static_cast<int>(s.int_in(0, 3)); k <= n; ++k) {
      p = p + x.pow(k) * QuadElem(s.rational(9, 9), s.rational(9, 9), d2);
      g = g + x.pow(k) * QuadElem(s.rational(9, 9), s.rational(9, 9), d2);
    }
    QuadElem xv = s.quad(d2);
    QuadElem inner = g.eval({{"x", xv}});
    CHECK(p.compose({{"x", g}}).eval({{"x", xv}}) == p.eval({{"x", inner}}));
  }
}

TEST_CASE("property: sigma commutes with evaluation at torus points") {
  // Evaluating sigma(p) at a norm-one lambda equals conjugating the
  // evaluation of p: the literal assertable form of sigma(l) = 1/l on S.
  Sampler s(47);
  for (int i = 0; i < 200; ++i) {
    SparsePoly p = random_poly(s);
    QuadElem xv = s.quad(d2);
    QuadElem l0 = s.torus_point(d2).value();
    std::map<std::string, QuadElem> pt{{"x", xv}, {"xb", xv.conjugate()}, {"l", l0}};
    CHECK(p.sigma().eval(pt) == p.eval(pt).conjugate());
  }
}

TEST_CASE("exponent overflow is detected") {
  SparsePoly big = unit("l", (std::int64_t{1} << 62));
  CHECK_THROWS_AS(big * big, std::overflow_error);
}
