#include <doctest.h>

#include "stresskit/realization.hpp"

#include <random>

using namespace stresskit;

namespace {

Realization realize(std::vector<std::vector<long>> pts, int ambient,
                    NumberMode mode = NumberMode::Exact) {
  Realization R;
  R.ambient = ambient;
  R.mode = mode;
  for (const auto& p : pts) {
    VecQ q;
    for (long x : p) q.push_back(Rational(x));
    R.coords.push_back(q);
  }
  return R;
}

// oriented boundary of the unit square as four segments in R^2
OrientedCycleD square_cycle() {
  OrientedCycleD c;
  c.ambient = 2;
  std::vector<VecD> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 4; ++i)
    c.simplices.push_back({{v[size_t(i)], v[size_t((i + 1) % 4)]}, 1});
  return c;
}

}  // namespace

TEST_CASE("flatness accepts planar quads and rejects skew ones") {
  // a single planar quadrilateral cell in R^3
  ComplexSpec spec;
  spec.dim = 2;
  spec.num_vertices = 4;
  spec.cells = {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 1, 2, 3}}};
  CellComplex K = CellComplex::build(spec);

  Realization flat = realize({{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1, 0}}, 3);
  CHECK(validate_flatness(K, flat).ok);

  Realization skew = realize({{0, 0, 0}, {2, 0, 0}, {2, 1, 1}, {0, 1, 0}}, 3);
  auto rep = validate_flatness(K, skew);
  CHECK(!rep.ok);
  REQUIRE(rep.offenders.size() == 1);
  CHECK(rep.offenders[0].cell.dim == 2);
  CHECK(rep.offenders[0].measured_rank == 3);
}

TEST_CASE("affine rank and projection") {
  std::vector<VecQ> pts = {{Rational(0), Rational(0)}, {Rational(1), Rational(1)},
                           {Rational(2), Rational(2)}};
  CHECK(affine_rank(pts) == 1);
  auto basis = affine_basis(pts);
  REQUIRE(basis.size() == 1);

  VecQ v = {Rational(1), Rational(0)};
  VecQ proj = project_onto_span(basis, v);
  CHECK(proj[0] == Rational(1, 2));
  CHECK(proj[1] == Rational(1, 2));
}

TEST_CASE("altitude of a right triangle") {
  CellComplex K = CellComplex::from_simplices(2, {{0, 1, 2}}, 3);
  Realization R = realize({{0, 0}, {4, 0}, {0, 3}}, 2);
  // facet {0,1} is the x-axis leg; the altitude points to vertex 2
  int fi = -1;
  for (size_t e = 0; e < K.count(1); ++e)
    if (K.cell(1, int(e)).vertices == std::vector<int>{0, 1}) fi = int(e);
  REQUIRE(fi >= 0);
  VecQ alt = altitude_vector(K, R, 2, 0, fi);
  CHECK(alt[0] == 0);
  CHECK(alt[1] == 3);
  VecD n = inner_unit_normal(K, R, 2, 0, fi);
  CHECK(n[0] == doctest::Approx(0));
  CHECK(n[1] == doctest::Approx(1));
}

TEST_CASE("generalized volume of the unit square and translation invariance") {
  OrientedCycleD c = square_cycle();
  CHECK(generalized_volume(c, {0.0, 0.0}) == doctest::Approx(1.0));
  // invariance in the base point
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int rep = 0; rep < 10; ++rep) {
    VecD p = {u(rng), u(rng)};
    CHECK(generalized_volume(c, p) == doctest::Approx(1.0));
    CHECK(slab_volume(c, p) == doctest::Approx(1.0));
  }
  // reversing orientation negates the determinant sum
  OrientedCycleD r = c;
  for (auto& s : r.simplices) s.sign = -s.sign;
  CHECK(generalized_volume(r, {0.3, 0.7}) == doctest::Approx(-1.0));
}

TEST_CASE("generalized volume agrees with slab volume on a random hexagon") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  OrientedCycleD c;
  c.ambient = 2;
  std::vector<VecD> pts;
  for (int i = 0; i < 6; ++i) {
    double ang = 2 * M_PI * i / 6;
    double rr = u(rng);
    pts.push_back({rr * std::cos(ang), rr * std::sin(ang)});
  }
  for (int i = 0; i < 6; ++i)
    c.simplices.push_back({{pts[size_t(i)], pts[size_t((i + 1) % 6)]}, 1});
  double gv = generalized_volume(c, {0.0, 0.0});
  CHECK(gv > 0);
  CHECK(slab_volume(c, {0.1, -0.2}) == doctest::Approx(gv));
}

TEST_CASE("exact generalized volume of a tetrahedron boundary") {
  // tetrahedron 0,e1,e2,e3: boundary faces oriented outward
  OrientedCycleQ c;
  c.ambient = 3;
  VecQ o = {Rational(0), Rational(0), Rational(0)};
  VecQ e1 = {Rational(1), Rational(0), Rational(0)};
  VecQ e2 = {Rational(0), Rational(1), Rational(0)};
  VecQ e3 = {Rational(0), Rational(0), Rational(1)};
  c.simplices.push_back({{o, e2, e1}, 1});
  c.simplices.push_back({{o, e1, e3}, 1});
  c.simplices.push_back({{o, e3, e2}, 1});
  c.simplices.push_back({{e1, e2, e3}, 1});
  VecQ p = {Rational(1, 3), Rational(-2, 7), Rational(5)};
  Rational v = generalized_volume(c, p);
  CHECK(abs(v) == Rational(1, 6));
}

TEST_CASE("cell volume and barycenter of simplices") {
  CellComplex K = CellComplex::from_simplices(2, {{0, 1, 2}}, 3);
  Realization R = realize({{0, 0}, {4, 0}, {0, 3}}, 2);
  CHECK(cell_volume(K, R, 2, 0) == doctest::Approx(6.0));
  for (size_t e = 0; e < K.count(1); ++e) {
    const auto& vs = K.cell(1, int(e)).vertices;
    VecD a = R.coord_d(vs[0]), b = R.coord_d(vs[1]);
    double len = std::hypot(a[0] - b[0], a[1] - b[1]);
    CHECK(cell_volume(K, R, 1, int(e)) == doctest::Approx(len));
  }
  VecQ bc = barycenter(K, R, 2, 0);
  CHECK(bc[0] == Rational(4, 3));
  CHECK(bc[1] == Rational(1));
}

TEST_CASE("cell volume of a non-simplicial polygon") {
  ComplexSpec spec;
  spec.dim = 2;
  spec.num_vertices = 4;
  spec.cells = {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 1, 2, 3}}};
  CellComplex K = CellComplex::build(spec);
  Realization R = realize({{0, 0}, {2, 0}, {2, 1}, {0, 1}}, 2);
  CHECK(cell_volume(K, R, 2, 0) == doctest::Approx(2.0));
}

TEST_CASE("flag frame signs flip with the flag and with orientation") {
  CellComplex K = CellComplex::from_simplices(2, {{0, 1, 2}}, 3);
  Realization R = realize({{0, 0}, {4, 0}, {0, 3}}, 2);
  OrientationClass O{{1}};
  auto flags = descending_flags(K, 2, 0);
  REQUIRE(flags.size() == 6);
  // frame sign times combinatorial incidence product is the same for all
  // flags of one cell: adjacent flags flip both factors simultaneously
  int s0 = flag_frame_sign(K, R, flags[0], O).sign * flag_incidence_product(K, flags[0]);
  CHECK((s0 == 1 || s0 == -1));
  for (const auto& fl : flags)
    CHECK(flag_frame_sign(K, R, fl, O).sign * flag_incidence_product(K, fl) == s0);
  OrientationClass Oneg{{-1}};
  CHECK(flag_frame_sign(K, R, flags[0], Oneg).sign == -s0);
  // frame normals have the flag's dimension count
  auto fr = flag_frame_sign(K, R, flags[0], O);
  CHECK(fr.normals.size() == 2);
}

TEST_CASE("geometric sign of a realized cell is orientation independent data") {
  CellComplex K = CellComplex::from_simplices(2, {{0, 1, 2}, {1, 2, 3}}, 4);
  Realization R = realize({{0, 0}, {2, 0}, {1, 2}, {3, 2}}, 2);
  int s0 = cell_geometric_sign(K, R, 0);
  int s1 = cell_geometric_sign(K, R, 1);
  CHECK((s0 == 1 || s0 == -1));
  CHECK((s1 == 1 || s1 == -1));
}
