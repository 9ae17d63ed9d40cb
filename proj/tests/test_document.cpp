#include <doctest.h>

#include "stresskit/document.hpp"
#include "stresskit/generators.hpp"

#include <cstdio>
#include <fstream>

using namespace stresskit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/stresskit_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("document round trip is bit identical") {
  Generated g = gen_cross_polytope_boundary(4, 3, 99);
  ComplexDocument doc = to_document(g);
  std::string once = serialize_document(doc);
  ComplexDocument back = parse_document(once);
  std::string twice = serialize_document(back);
  CHECK(once == twice);
  CHECK(back.dimension == doc.dimension);
  CHECK(back.ambient == doc.ambient);
  CHECK(back.coords == doc.coords);
  CHECK(back.cells == doc.cells);
  CHECK(back.pinned == doc.pinned);
}

TEST_CASE("exact rational coordinates survive the round trip") {
  ComplexDocument doc;
  doc.dimension = 1;
  doc.ambient = 2;
  doc.coords = {{Rational(1, 3), Rational(-22, 7)}, {Rational(0), Rational(10001, 10000)}};
  doc.cells = {{{0, 1}}};
  ComplexDocument back = parse_document(serialize_document(doc));
  CHECK(back.coords[0][0] == Rational(1, 3));
  CHECK(back.coords[0][1] == Rational(-22, 7));
  CHECK(back.coords[1][1] == Rational(10001, 10000));
}

TEST_CASE("instantiate rebuilds the full lattice") {
  Generated g = gen_schlegel_simplex(4);
  ComplexDocument doc = to_document(g);
  Instantiated inst = instantiate(doc, NumberMode::Exact);
  CHECK(inst.K.dim() == g.K.dim());
  for (int k = 0; k <= g.K.dim(); ++k) CHECK(inst.K.count(k) == g.K.count(k));
  CHECK(inst.R.coords == g.R.coords);
  CHECK(inst.R.mode == NumberMode::Exact);
  // pinned flags preserved
  for (int k = 0; k <= g.K.dim(); ++k)
    for (size_t i = 0; i < g.K.count(k); ++i)
      CHECK(inst.K.cell(k, int(i)).pinned == g.K.cell(k, int(i)).pinned);
}

TEST_CASE("stress assignments travel with the document") {
  Generated g = gen_lifted_grid(3, 2, 2);
  REQUIRE(g.stress.has_value());
  ComplexDocument doc = to_document(g);
  REQUIRE(doc.stresses.count("induced") == 1);
  ComplexDocument back = parse_document(serialize_document(doc));
  const StressAssignment& s = back.stresses.at("induced");
  CHECK(s.level == g.stress->level);
  REQUIRE(s.density.has_value());
  CHECK(*s.density == *g.stress->density);
  for (size_t i = 0; i < s.weighted.size(); ++i)
    CHECK(s.weighted[i] == doctest::Approx(g.stress->weighted[i]));
}

TEST_CASE("save and load through the filesystem") {
  TempFile f("roundtrip.json");
  Generated g = gen_twisted_hexagon();
  ComplexDocument doc = to_document(g);
  save_document(f.path, doc);
  ComplexDocument back = load_document(f.path);
  CHECK(serialize_document(back) == serialize_document(doc));
  CHECK(slurp(f.path) == serialize_document(doc));
}

TEST_CASE("malformed documents raise clear errors") {
  CHECK_THROWS_AS(parse_document("not json at all"), ComplexError);
  CHECK_THROWS_AS(parse_document("{}"), ComplexError);
  CHECK_THROWS_AS(parse_document(R"({"format_version": 7})"), ComplexError);
  // truncated file
  Generated g = gen_schlegel_simplex(3);
  std::string text = serialize_document(to_document(g));
  CHECK_THROWS_AS(parse_document(text.substr(0, text.size() / 2)), ComplexError);
  // bad rational literal
  std::string bad = R"({"format_version":1,"dimension":1,"ambient_dim":1,
    "vertices":[["1/0"],["2"]],"cells":[[[0,1]]]})";
  CHECK_THROWS_AS(parse_document(bad), ComplexError);
}

TEST_CASE("missing fields are named in the error") {
  try {
    parse_document(R"({"format_version":1,"dimension":2})");
    FAIL("expected a parse error");
  } catch (const ComplexError& e) {
    CHECK(std::string(e.what()).find("ambient_dim") != std::string::npos);
  }
}

TEST_CASE("simplicial mesh import") {
  TempFile f("mesh.off");
  {
    std::ofstream out(f.path);
    out << "OFF\n4 4 6\n";
    out << "0 0 0\n1 0 0\n0 1 0\n0 0 1\n";
    out << "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
  }
  ComplexDocument doc = import_simplicial_mesh(f.path);
  CHECK(doc.dimension == 2);
  CHECK(doc.ambient == 3);
  CHECK(doc.coords.size() == 4);
  Instantiated inst = instantiate(doc);
  CHECK(inst.K.closed());
  CHECK(inst.K.count(1) == 6);
}

TEST_CASE("polyline export for reciprocal diagrams") {
  TempFile f("lines.txt");
  save_polyline(f.path, {{0.0, 0.0}, {1.0, 2.0}}, {{0, 1}});
  std::string text = slurp(f.path);
  CHECK(text.find("v 0 0") != std::string::npos);
  CHECK(text.find("v 1 2") != std::string::npos);
  CHECK(text.find("e 0 1") != std::string::npos);
}
