#include <doctest.h>

#include "stresskit/generators.hpp"
#include "stresskit/lp.hpp"

using namespace stresskit;

namespace {

QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

VecQ qv(std::vector<long> v) {
  VecQ out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

Realization realize(std::vector<std::vector<long>> pts, int ambient) {
  Realization R;
  R.ambient = ambient;
  R.mode = NumberMode::Exact;
  for (const auto& p : pts) {
    VecQ q;
    for (long x : p) q.push_back(Rational(x));
    R.coords.push_back(q);
  }
  return R;
}

}  // namespace

TEST_CASE("simplex solves a bounded standard-form program") {
  // min -x1 - 2x2  s.t.  x1 + x2 + s1 = 4,  x1 + 3x2 + s2 = 6,  x >= 0
  StandardLP lp;
  lp.A = from_rows({{1, 1, 1, 0}, {1, 3, 0, 1}});
  lp.b = qv({4, 6});
  lp.c = qv({-1, -2, 0, 0});
  LPSolution s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == 3);
  CHECK(s.x[1] == 1);
  CHECK(s.value == -5);
}

TEST_CASE("simplex detects unboundedness") {
  // min -x1 s.t. x1 - x2 = 0 : ray x1 = x2 -> infinity
  StandardLP lp;
  lp.A = from_rows({{1, -1}});
  lp.b = qv({0});
  lp.c = qv({-1, 0});
  LPSolution s = solve_lp(lp);
  CHECK(s.status == LPStatus::Unbounded);
}

TEST_CASE("simplex returns a valid Farkas certificate") {
  // x1 + x2 = 2 and x1 + x2 = 3 cannot both hold
  StandardLP lp;
  lp.A = from_rows({{1, 1}, {1, 1}});
  lp.b = qv({2, 3});
  lp.c = qv({0, 0});
  LPSolution s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Infeasible);
  REQUIRE(s.farkas_y.size() == 2);
  // y^T A <= 0 and y^T b > 0
  for (size_t j = 0; j < 2; ++j) {
    Rational col = s.farkas_y[0] * lp.A(0, j) + s.farkas_y[1] * lp.A(1, j);
    CHECK(col <= 0);
  }
  CHECK(s.farkas_y[0] * lp.b[0] + s.farkas_y[1] * lp.b[1] > 0);
}

TEST_CASE("simplex handles negative right-hand sides") {
  // -x1 + s = -1  ==>  x1 >= 1; min x1 -> 1
  StandardLP lp;
  lp.A = from_rows({{-1, 1}});
  lp.b = qv({-1});
  lp.c = qv({1, 0});
  LPSolution s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == 1);
  CHECK(s.value == 1);
}

TEST_CASE("degenerate programs terminate under Bland's rule") {
  // classic degenerate vertex: multiple rows with zero rhs
  StandardLP lp;
  lp.A = from_rows({{1, 1, 1, 0, 0}, {1, -1, 0, 1, 0}, {2, 1, 0, 0, 1}});
  lp.b = qv({0, 0, 4});
  lp.c = qv({-1, -1, 0, 0, 0});
  LPSolution s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value <= 0);
}

TEST_CASE("spoke triangle supports a positive stress") {
  // interior vertex 3 joined to pinned corners of an equilateral-ish triangle
  CellComplex K = CellComplex::from_simplices(1, {{0, 3}, {1, 3}, {2, 3}}, 4);
  for (int v : {0, 1, 2}) K.set_pinned(0, v, true);
  Realization R = realize({{0, 0}, {6, 0}, {3, 5}, {3, 2}}, 2);
  PositiveStressResult r = find_positive_stress(K, R, 2);
  REQUIRE(r.status == PositiveStressStatus::Found);
  for (size_t e = 0; e < K.count(1); ++e) CHECK(r.stress.weighted[e] > 0);
  CHECK(verify_stress(r.stress, K, R).max_relative_residual <= 1e-10);
}

TEST_CASE("unpinned K4 has no all-positive stress") {
  CellComplex K = CellComplex::from_simplices(
      1, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 4);
  Realization R = realize({{0, 0}, {7, 1}, {3, 6}, {4, 2}}, 2);
  PositiveStressResult r = find_positive_stress(K, R, 2);
  CHECK(r.status == PositiveStressStatus::Infeasible);
  CHECK(!r.certificate.empty());
}

TEST_CASE("lifted grid with pinned boundary is a spider web") {
  Generated g = gen_lifted_grid(3, 2, 5);
  PositiveStressResult r = find_positive_stress(g.K, g.R, g.K.dim());
  REQUIRE(r.status == PositiveStressStatus::Found);
  for (size_t i = 0; i < g.K.count(g.K.dim() - 1); ++i) {
    const Cell& c = g.K.cell(g.K.dim() - 1, int(i));
    if (c.internal && !c.pinned) CHECK(r.stress.weighted[i] > 0);
  }
}

TEST_CASE("twisted hexagon admits no positive stress and yields a certificate") {
  Generated g = gen_twisted_hexagon();
  PositiveStressResult r = find_positive_stress(g.K, g.R, 2);
  REQUIRE(r.status == PositiveStressStatus::Infeasible);
  REQUIRE(!r.certificate.empty());

  // the certificate is a separating functional: y^T B <= 0 per basis vector,
  // with y supported on interior edges
  StressBasis sb = stress_basis(g.K, g.R, 2);
  for (const auto& b : sb.basis) {
    REQUIRE(b.density.has_value());
    Rational acc = 0;
    for (const auto& [cell, y] : r.certificate) acc += y * (*b.density)[size_t(cell)];
    CHECK(acc <= 0);
  }
}
