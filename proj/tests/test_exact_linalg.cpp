#include <doctest.h>

#include "stresskit/exact_linalg.hpp"
#include "stresskit/multivector.hpp"

#include <random>

using namespace stresskit;

namespace {

QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("rank and kernel of small integer matrices") {
  QMatrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(rank(m) == 2);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  for (size_t i = 0; i < 3; ++i) {
    Rational acc = 0;
    for (size_t j = 0; j < 3; ++j) acc += m(i, j) * ker[0][j];
    CHECK(acc == 0);
  }
}

TEST_CASE("left kernel annihilates rows") {
  QMatrix m = from_rows({{1, 0}, {0, 1}, {1, 1}});
  auto lk = left_kernel_basis(m);
  REQUIRE(lk.size() == 1);
  for (size_t j = 0; j < 2; ++j) {
    Rational acc = 0;
    for (size_t i = 0; i < 3; ++i) acc += lk[0][i] * m(i, j);
    CHECK(acc == 0);
  }
}

TEST_CASE("solve returns exact rational solutions") {
  QMatrix m = from_rows({{2, 1}, {1, 3}});
  VecQ b = {Rational(1), Rational(2)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1, 5));
  CHECK((*x)[1] == Rational(3, 5));

  QMatrix inconsistent = from_rows({{1, 1}, {1, 1}});
  VecQ b2 = {Rational(0), Rational(1)};
  CHECK(!solve(inconsistent, b2).has_value());
}

TEST_CASE("determinant matches cofactor expansion") {
  QMatrix m = from_rows({{2, 0, 1}, {1, 3, -1}, {0, 1, 4}});
  // 2*(12+1) - 0 + 1*(1-0) = 27
  CHECK(determinant(m) == 27);
  QMatrix sing = from_rows({{1, 2}, {2, 4}});
  CHECK(determinant(sing) == 0);
}

TEST_CASE("rank + nullity property on random rational matrices") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    size_t r = 2 + rng() % 4, c = 2 + rng() % 4;
    QMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        m(i, j) = Rational((long)(rng() % 11) - 5, 1 + (long)(rng() % 3));
    size_t rk = rank(m);
    CHECK(rk + kernel_basis(m).size() == c);
    CHECK(rank(m.transposed()) == rk);
    CHECK(left_kernel_basis(m).size() == r - rk);
  }
}

TEST_CASE("mod-2 rank of the triangle boundary map") {
  // edges {01,02,12} x vertices {0,1,2}
  std::vector<std::vector<uint64_t>> rows = {{0b011}, {0b101}, {0b110}};
  CHECK(rank_mod2(rows, 3) == 2);
}

TEST_CASE("rational string round trip") {
  for (const char* s : {"0", "7", "-3", "2/3", "-11/17"}) {
    auto q = parse_rational(s);
    REQUIRE(q.has_value());
    CHECK(rational_to_string(*q) == s);
  }
  auto dec = parse_rational("-1.25");
  REQUIRE(dec.has_value());
  CHECK(*dec == Rational(-5, 4));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("abc").has_value());
}

TEST_CASE("wedge and hodge star in R^3") {
  std::vector<double> e1 = {1, 0, 0}, e2 = {0, 1, 0}, e3 = {0, 0, 1};
  auto w = wedge_all<double>(3, {e1, e2});
  CHECK(w.c[0b011] == doctest::Approx(1.0));
  auto s = hodge_star(w);
  CHECK(s.c[0b100] == doctest::Approx(1.0));  // *(e1^e2) = e3

  auto cross = generalized_cross<double>(3, {e1, e2});
  CHECK(cross[2] == doctest::Approx(1.0));
  // anti-commutativity
  auto w2 = wedge_all<double>(3, {e2, e1});
  CHECK(w2.c[0b011] == doctest::Approx(-1.0));
}

TEST_CASE("generalized cross length equals parallelepiped volume") {
  std::vector<double> a = {1, 2, 0}, b = {0, 1, 3};
  auto n = generalized_cross<double>(3, {a, b});
  // |a x b| with a x b = (6,-3,1)
  CHECK(n[0] == doctest::Approx(6));
  CHECK(n[1] == doctest::Approx(-3));
  CHECK(n[2] == doctest::Approx(1));
  double dots = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
  CHECK(dots == doctest::Approx(0));
}
