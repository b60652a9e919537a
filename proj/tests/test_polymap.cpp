#include <doctest.h>

#include "quadtwist/polymap.hpp"
#include "quadtwist/sampling.hpp"

using namespace quadtwist;

namespace {

const Discriminant d2{Rational(2)};

PolyMap linear_map(const std::vector<std::vector<Rational>>& m) {
  std::vector<VarSpec> coords{affine_var("x"), affine_var("y")};
  SparsePoly x = SparsePoly::variable(d2, coords[0]);
  SparsePoly y = SparsePoly::variable(d2, coords[1]);
  std::vector<SparsePoly> comps;
  for (const auto& row : m) comps.push_back(x * row[0] + y * row[1]);
  return PolyMap(d2, coords, comps);
}

}  // namespace

TEST_CASE("identity and composition") {
  std::vector<VarSpec> coords{affine_var("x"), affine_var("y")};
  PolyMap id = PolyMap::identity(d2, coords);
  CHECK(id.is_identity());

  PolyMap f = linear_map({{1, 2}, {3, 4}});
  CHECK(map_compose(f, id) == f);
  CHECK(map_compose(id, f) == f);

  // Linear maps compose like their matrices.
  PolyMap g = linear_map({{0, 1}, {1, 1}});
  PolyMap fg = map_compose(f, g);
  // f∘g has matrix F*G = [[1,2],[3,4]]*[[0,1],[1,1]] = [[2,3],[4,7]].
  CHECK(fg == linear_map({{2, 3}, {4, 7}}));

  PolyMap h = linear_map({{1, 1}, {0, 1}});
  CHECK(map_compose(map_compose(f, g), h) == map_compose(f, map_compose(g, h)));
}

TEST_CASE("dimension mismatch") {
  PolyMap f = linear_map({{1, 0}, {0, 1}});
  SparsePoly x = SparsePoly::variable(d2, affine_var("x"));
  PolyMap to_line(d2, {affine_var("x"), affine_var("y")}, {x});
  CHECK_THROWS_AS(map_compose(f, to_line), std::invalid_argument);
  CHECK_NOTHROW(map_compose(to_line, f));
}

TEST_CASE("conjugate-aware composition") {
  // On K^1 with coordinates (x, xb): sigma as a map is x -> xb; composing it
  // with itself must give the identity.
  std::vector<VarSpec> coords{affine_pair_var("x", "xb")};
  SparsePoly xb = SparsePoly::variable(d2, affine_pair_var("xb", "x"));
  PolyMap sigma_map(d2, coords, {xb});
  PolyMap twice = map_compose(sigma_map, sigma_map);
  CHECK(twice.is_identity());
}

TEST_CASE("parameter substitution and renaming") {
  std::vector<VarSpec> coords{affine_var("x")};
  SparsePoly x = SparsePoly::variable(d2, coords[0]);
  SparsePoly l3 = SparsePoly::monomial(d2, {unit_var("l")}, ExpVec{3}, QuadElem::one(d2));
  PolyMap scaled(d2, coords, {l3 * x});

  PolyMap at_two = scaled.substitute_param("l", SparsePoly::constant(d2, 2));
  CHECK(at_two.component(0) == x * Rational(8));

  CHECK_THROWS_AS(scaled.substitute_param("x", x), std::invalid_argument);

  PolyMap renamed = scaled.rename_var("l", "m");
  CHECK_FALSE(renamed.component(0).depends_on("l"));
  CHECK(renamed.component(0).depends_on("m"));
  CHECK(renamed.rename_var("m", "l") == scaled);
}

TEST_CASE("evaluation fills conjugate partners") {
  std::vector<VarSpec> coords{affine_pair_var("x", "xb")};
  SparsePoly x = SparsePoly::variable(d2, coords[0]);
  SparsePoly xb = SparsePoly::variable(d2, affine_pair_var("xb", "x"));
  PolyMap norm_map(d2, coords, {x * xb});
  QuadElem v(1, 1, d2);
  auto out = norm_map.eval({{"x", v}});
  CHECK(out.size() == 1);
  CHECK(out[0] == QuadElem(v.norm(), 0, d2));
}

TEST_CASE("evaluation agrees with composition") {
  Sampler s(13);
  PolyMap f = linear_map({{2, 1}, {1, 1}});
  PolyMap g = linear_map({{1, 3}, {0, 2}});
  PolyMap fg = map_compose(f, g);
  for (int i = 0; i < 100; ++i) {
    QuadElem xv = s.quad(d2), yv = s.quad(d2);
    std::map<std::string, QuadElem> pt{{"x", xv}, {"y", yv}};
    auto inner = g.eval(pt);
    auto direct = f.eval({{"x", inner[0]}, {"y", inner[1]}});
    CHECK(fg.eval(pt) == direct);
  }
}
