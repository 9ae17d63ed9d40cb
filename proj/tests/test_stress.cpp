#include <doctest.h>

#include "stresskit/generators.hpp"
#include "stresskit/stress.hpp"

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

// K4 as a planar framework: 4 vertices in generic position, all 6 edges.
CellComplex k4() {
  return CellComplex::from_simplices(
      1, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 4);
}

Realization k4_coords(NumberMode mode) {
  return realize({{0, 0}, {7, 1}, {3, 6}, {4, 2}}, 2, mode);
}

}  // namespace

TEST_CASE("triangle framework has no self-stress") {
  CellComplex K = CellComplex::from_simplices(1, {{0, 1}, {0, 2}, {1, 2}}, 3);
  Realization R = realize({{0, 0}, {4, 0}, {1, 3}}, 2);
  AssembledMatrix M = assemble(K, R, 2);
  CHECK(M.M.rows() == 3);
  StressBasis sb = stress_basis(K, R, 2);
  CHECK(sb.basis.empty());
}

TEST_CASE("generic planar K4 carries a one-dimensional stress space") {
  CellComplex K = k4();
  for (NumberMode mode : {NumberMode::Exact, NumberMode::Floating}) {
    Realization R = k4_coords(mode);
    StressBasis sb = stress_basis(K, R, 2);
    REQUIRE(sb.basis.size() == 1);
    VerifyReport rep = verify_stress(sb.basis[0], K, R);
    CHECK(rep.max_relative_residual <= 1e-10);
    if (mode == NumberMode::Exact) CHECK(rep.exact_zero);
  }
}

TEST_CASE("random non-kernel assignment on K4 has positive residual") {
  CellComplex K = k4();
  Realization R = k4_coords(NumberMode::Floating);
  StressAssignment s;
  s.level = 2;
  s.weighted = {1.0, -0.3, 0.8, 0.2, -1.1, 0.5};
  VerifyReport rep = verify_stress(s, K, R);
  CHECK(rep.max_relative_residual > 1e-3);

  StressAssignment zero;
  zero.level = 2;
  zero.weighted.assign(6, 0.0);
  CHECK(verify_stress(zero, K, R).max_relative_residual == 0);
}

TEST_CASE("cross-polytope boundary stress dimensions in R^3") {
  Generated g = gen_cross_polytope_boundary(4, 3, 2024);
  REQUIRE(g.K.dim() == 3);
  REQUIRE(g.R.ambient == 3);
  StressBasis s3 = stress_basis(g.K, g.R, 3);
  CHECK(s3.basis.size() == 4);
  StressBasis s2 = stress_basis(g.K, g.R, 2);
  CHECK(s2.basis.size() == 6);
  for (const auto& b : s3.basis)
    CHECK(verify_stress(b, g.K, g.R).max_relative_residual <= 1e-10);
  for (const auto& b : s2.basis)
    CHECK(verify_stress(b, g.K, g.R).max_relative_residual <= 1e-10);
}

TEST_CASE("2-spheres realized in the plane satisfy the f0 - 3 law") {
  for (uint64_t seed : {1ull, 5ull}) {
    Generated g = gen_cross_polytope_boundary(3, 2, seed);
    StressBasis sb = stress_basis(g.K, g.R, 2);
    CHECK(sb.basis.size() == f_vector(g.K)[0] - 3);
  }
  Generated st = gen_stacked_sphere(8, 2, 9);
  StressBasis sb = stress_basis(st.K, st.R, 2);
  CHECK(sb.basis.size() == f_vector(st.K)[0] - 3);
}

TEST_CASE("exact and floating kernels agree on random simplicial inputs") {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    for (auto [n, amb] : {std::pair{3, 2}, std::pair{4, 3}}) {
      Generated g = gen_cross_polytope_boundary(n, amb, seed);
      for (int k = 2; k <= g.K.dim(); ++k) {
        Realization Rf = g.R;
        Rf.mode = NumberMode::Floating;
        StressBasis ex = stress_basis(g.K, g.R, k);
        StressBasis fl = stress_basis(g.K, Rf, k);
        CHECK(ex.basis.size() == fl.basis.size());
        ++checked;
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("stresses form a linear space under scaling") {
  Generated g = gen_cross_polytope_boundary(3, 2, 3);
  StressBasis sb = stress_basis(g.K, g.R, 2);
  REQUIRE(!sb.basis.empty());
  StressAssignment s = sb.basis[0];
  for (auto& w : s.weighted) w *= -7.5;
  CHECK(verify_stress(s, g.K, g.R).max_relative_residual <= 1e-10);
}

TEST_CASE("static rigidity of small frameworks") {
  CellComplex tri = CellComplex::from_simplices(1, {{0, 1}, {0, 2}, {1, 2}}, 3);
  Realization Rtri = realize({{0, 0}, {4, 0}, {1, 3}}, 2);
  RigidityReport r = is_statically_rigid(tri, Rtri);
  CHECK(r.rigid);
  CHECK(r.rank == 3);
  CHECK(r.load_dim == 3);

  CellComplex cyc = CellComplex::from_simplices(1, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 4);
  Realization Rc = realize({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, 2);
  RigidityReport rc = is_statically_rigid(cyc, Rc);
  CHECK(!rc.rigid);
  CHECK(rc.rank == 4);
  CHECK(rc.load_dim == 5);
}

TEST_CASE("cross-polytope skeleton in R^4 is rigid with g_2 stresses") {
  Generated g = gen_cross_polytope_boundary(4, 4, 17);
  // extract the 1-skeleton as a framework over the same coordinates
  std::vector<std::vector<int>> edges;
  for (size_t e = 0; e < g.K.count(1); ++e) edges.push_back(g.K.cell(1, int(e)).vertices);
  CellComplex F = CellComplex::from_simplices(1, edges, int(g.K.count(0)));
  RigidityReport r = is_statically_rigid(F, g.R);
  CHECK(r.rigid);
  CHECK(r.rank == 4 * 8 - 10);
  StressBasis sb = stress_basis(F, g.R, 2);
  CHECK(sb.basis.size() == 2);  // 24 - 22
  CHECK(sb.basis.size() == size_t(g_number(f_vector(g.K), 2, 4)));
}

TEST_CASE("densities and weighted coordinates are consistent views") {
  Generated g = gen_cross_polytope_boundary(3, 2, 4);
  StressBasis sb = stress_basis(g.K, g.R, 2);
  REQUIRE(!sb.basis.empty());
  for (const auto& b : sb.basis) {
    REQUIRE(b.density.has_value());
    VecD w = densities_to_weighted(g.K, g.R, 2, *b.density);
    for (size_t i = 0; i < w.size(); ++i)
      CHECK(w[i] == doctest::Approx(b.weighted[i]).epsilon(1e-9));
  }
}
