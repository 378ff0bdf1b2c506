#include <doctest.h>

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "generators.hpp"
#include "toric_ic/charsys.hpp"
#include "toric_ic/error.hpp"
#include "toric_ic/fan.hpp"
#include "toric_ic/fan_io.hpp"

using namespace toric_ic;

namespace {

std::vector<IntVector> gens(std::initializer_list<std::initializer_list<long long>> vs) {
  std::vector<IntVector> out;
  for (auto v : vs) out.push_back(make_vector(v));
  return out;
}

bool has_rule(const std::vector<FanViolation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const FanViolation& v) { return v.rule == rule; });
}

}  // namespace

TEST_CASE("the affine plane") {
  Fan f = builtin_fan("affine:2");
  CHECK(f.cones().size() == 4);
  CHECK(validate_fan(f).empty());
  // Ids follow the lexicographic order of sorted generator lists.
  CHECK(f.cone(0).generators.empty());
  CHECK(f.cone(1).generators == gens({{0, 1}}));
  CHECK(f.cone(2).generators == gens({{0, 1}, {1, 0}}));
  CHECK(f.cone(3).generators == gens({{1, 0}}));
  CHECK(f.dimension() == 2);

  std::vector<Cone> faces = faces_of(f, 2);
  CHECK(faces.size() == 4);
  CHECK(faces_of(f, 0).size() == 1);
  CHECK_THROWS_AS(faces_of(f, 7), Error);

  auto levels = codim_filtration(f);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].size() == 1);
  CHECK(levels[1].size() == 2);
  CHECK(levels[2].size() == 1);
}

TEST_CASE("missing face is reported") {
  Fan f = Fan::from_cones(2, {{}, gens({{1, 0}}), gens({{1, 0}, {0, 1}})}, false);
  auto v = validate_fan(f);
  REQUIRE(has_rule(v, "face missing"));
  bool named = false;
  for (const auto& x : v)
    if (x.message.find("face missing: ray{(0,1)}") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("overlapping 2-cones are reported") {
  // (2,1) = 2(1,0) + 1(0,1) = 3/2 (1,0) + 1/2 (1,2): strictly positive in both
  // cones, so it is an interior point of each.
  const IntVector p = make_vector({2, 1});
  auto coefficients = [&](const IntVector& a, const IntVector& b) {
    Rational det = Rational(a[0] * b[1] - a[1] * b[0]);
    Rational x = Rational(p[0] * b[1] - p[1] * b[0]) / det;
    Rational y = Rational(a[0] * p[1] - a[1] * p[0]) / det;
    return std::pair{x, y};
  };
  auto [a1, b1] = coefficients(make_vector({1, 0}), make_vector({0, 1}));
  auto [a2, b2] = coefficients(make_vector({1, 0}), make_vector({1, 2}));
  REQUIRE(a1 > 0);
  REQUIRE(b1 > 0);
  REQUIRE(a2 > 0);
  REQUIRE(b2 > 0);

  Fan f = Fan::from_cones(2, {gens({{1, 0}, {0, 1}}), gens({{1, 0}, {1, 2}})});
  auto v = validate_fan(f);
  CHECK(has_rule(v, "intersection"));
  bool named = false;
  for (const auto& x : v)
    if (x.message.find("intersection not a common face") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("cone over the square has 10 faces") {
  Fan f = builtin_fan("cone_over_square");
  CHECK(validate_fan(f).empty());
  const auto top = f.find(canonical_rays(3, gens({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})));
  REQUIRE(top);

  // Brute force: every face is cut out by a supporting functional u >= 0 on
  // the generators; enumerate small integer u.
  const auto g = f.cone(*top).generators;
  std::set<std::vector<IntVector>> brute;
  for (long long x = -2; x <= 2; ++x)
    for (long long y = -2; y <= 2; ++y)
      for (long long z = -2; z <= 2; ++z) {
        IntVector u = make_vector({x, y, z});
        bool supporting = true;
        std::vector<IntVector> face;
        for (const IntVector& v : g) {
          Int d = dot(u, v);
          if (d < 0) supporting = false;
          if (d == 0) face.push_back(v);
        }
        if (supporting) brute.insert(face);
      }
  CHECK(brute.size() == 10);
  CHECK(faces_of(f, *top).size() == 10);
  CHECK(f.cones().size() == 10);

  auto levels = codim_filtration(f);
  CHECK(levels[0].size() == 1);
  CHECK(levels[1].size() == 4);
  CHECK(levels[2].size() == 4);
  CHECK(levels[3].size() == 1);
  CHECK_FALSE(f.geometry(*top).facet_normals.empty());
}

TEST_CASE("orbit data") {
  Fan plane = builtin_fan("affine:2");
  const OrbitData& ray = orbit_data(plane, 3);
  CHECK(ray.stab_lattice.basis() == gens({{1, 0}}));
  CHECK(ray.quotient.rank() == 1);
  CHECK(ray.orbit_dim == 1);
  const OrbitData& open = orbit_data(plane, 0);
  CHECK(open.stab_lattice.rank() == 0);
  CHECK(open.orbit_dim == 2);
  CHECK_THROWS_AS(orbit_data(plane, 9), Error);

  Fan a1 = builtin_fan("a1_surface");
  const auto top = a1.find(gens({{1, 0}, {1, 2}}));
  REQUIRE(top);
  // The generators span an index-2 sublattice; its saturation is Z^2.
  Sublattice span(2, gens({{1, 0}, {1, 2}}));
  SmithForm s = smith_normal_form(span.basis_matrix());
  CHECK(s.d == IntMatrix{{1, 0}, {0, 2}});
  CHECK(same_lattice(a1.orbit(*top).stab_lattice, Sublattice::full(2)));
  CHECK(a1.orbit(*top).orbit_dim == 0);
}

TEST_CASE("orbit data invariants on the corpus") {
  for (const std::string& name : corpus_fan_names()) {
    Fan f = builtin_fan(name);
    CAPTURE(name);
    CHECK(validate_fan(f).empty());
    std::size_t total = 0;
    for (const auto& level : codim_filtration(f)) total += level.size();
    CHECK(total == f.cones().size());
    for (const Cone& c : f.cones()) {
      const OrbitData& o = f.orbit(c.id);
      CHECK(o.stab_lattice.is_saturated());
      CHECK(o.stab_lattice.rank() == static_cast<std::size_t>(c.dim));
      CHECK(o.quotient.rank() + o.stab_lattice.rank() == f.ambient_rank());
      CHECK(o.orbit_dim == static_cast<int>(f.ambient_rank()) - c.dim);
      for (ConeId s : f.faces(c.id)) CHECK(f.is_face(s, c.id));
    }
  }
}

TEST_CASE("builtin fans") {
  Fan p1 = builtin_fan("projective_space:1");
  CHECK(p1.cones().size() == 3);
  CHECK(p1.find(gens({{1}})));
  CHECK(p1.find(gens({{-1}})));

  Fan h2 = builtin_fan("hirzebruch:2");
  CHECK(validate_fan(h2).empty());
  int two_cones = 0;
  for (const Cone& c : h2.cones()) two_cones += c.dim == 2;
  CHECK(two_cones == 4);
  CHECK(h2.find(gens({{-1, 2}})));

  Fan w = builtin_fan("weighted_p112");
  CHECK(w.find(gens({{-1, -2}})));
  CHECK(w.cones().size() == 7);

  CHECK_THROWS_AS(builtin_fan("nope"), Error);
  CHECK_THROWS_AS(builtin_fan("affine"), Error);
  CHECK_THROWS_AS(builtin_fan("p1xp1:3"), Error);
}

TEST_CASE("cone geometry") {
  ConeGeometry g = analyze_cone(2, gens({{1, 0}, {1, 1}, {0, 1}}));
  CHECK(g.rays == gens({{0, 1}, {1, 0}}));
  CHECK(g.pointed);
  CHECK(cone_contains(g, make_vector({3, 1})));
  CHECK_FALSE(cone_contains(g, make_vector({-1, 1})));

  ConeGeometry line = analyze_cone(2, gens({{1, 0}, {-1, 0}}));
  CHECK_FALSE(line.pointed);

  auto rays = extreme_rays(2, gens({{1, 0}, {0, 1}}));
  CHECK(rays == gens({{0, 1}, {1, 0}}));
}

TEST_CASE("face closure makes random simplicial fans valid") {
  // Random unimodular images of the positive orthant are smooth cones.
  gen::Gen g(3);
  for (int i = 0; i < 30; ++i) {
    IntMatrix u = g.unimodular(3);
    std::vector<IntVector> rows;
    for (std::size_t r = 0; r < 3; ++r) rows.push_back(u.row(r));
    Fan f = Fan::from_cones(3, {rows});
    CHECK(validate_fan(f).empty());
    CHECK(f.cones().size() == 8);
  }
}
