#include "stresskit/document.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stresskit {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what);

Rational parse_rational_or_fail(const std::string& s) {
  auto q = parse_rational(s);
  if (!q) fail("bad rational literal '" + s + "'");
  return *q;
}

json coords_to_json(const std::vector<VecQ>& coords) {
  json arr = json::array();
  for (const auto& p : coords) {
    json row = json::array();
    for (const auto& x : p) row.push_back(rational_to_string(x));
    arr.push_back(row);
  }
  return arr;
}

std::vector<VecQ> coords_from_json(const json& arr) {
  std::vector<VecQ> out;
  for (const auto& row : arr) {
    VecQ p;
    for (const auto& x : row) p.push_back(parse_rational_or_fail(x.get<std::string>()));
    out.push_back(p);
  }
  return out;
}

[[noreturn]] void fail(const std::string& what) {
  throw ComplexError("document parse error: " + what);
}

template <class T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

ComplexDocument make_document(const CellComplex& K, const Realization& R) {
  ComplexDocument doc;
  doc.dimension = K.dim();
  doc.ambient = R.ambient;
  doc.coords = R.coords;
  for (int k = 1; k <= K.dim(); ++k) {
    std::vector<std::vector<int>> layer;
    for (size_t i = 0; i < K.count(k); ++i)
      layer.push_back(k == 1 ? K.cell(1, int(i)).vertices : K.cell(k, int(i)).facets);
    doc.cells.push_back(layer);
  }
  for (int k = 0; k <= K.dim(); ++k) {
    std::vector<uint8_t> flags;
    for (size_t i = 0; i < K.count(k); ++i) flags.push_back(K.cell(k, int(i)).pinned);
    doc.pinned.push_back(flags);
  }
  return doc;
}

ComplexDocument to_document(const Generated& g) {
  ComplexDocument doc = make_document(g.K, g.R);
  doc.provenance["family"] = g.family;
  if (g.stress) doc.stresses["induced"] = *g.stress;
  if (auto O = orient(g.K)) doc.orientation = O->sign;
  return doc;
}

Instantiated instantiate(const ComplexDocument& doc, NumberMode mode, double tol) {
  ComplexSpec spec;
  spec.dim = doc.dimension;
  spec.num_vertices = int(doc.coords.size());
  spec.cells = doc.cells;
  spec.pinned = doc.pinned;
  Instantiated out{CellComplex::build(spec), Realization{}};
  out.R.ambient = doc.ambient;
  out.R.coords = doc.coords;
  out.R.mode = mode;
  out.R.tol = tol;
  return out;
}

std::string serialize_document(const ComplexDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["dimension"] = doc.dimension;
  j["ambient_dim"] = doc.ambient;
  j["vertices"] = coords_to_json(doc.coords);
  json cells = json::array();
  for (const auto& layer : doc.cells) cells.push_back(layer);
  j["cells"] = cells;
  j["pinned"] = doc.pinned;
  if (doc.orientation) j["orientation"] = *doc.orientation;
  if (!doc.provenance.empty()) j["provenance"] = doc.provenance;
  if (!doc.stresses.empty()) {
    json st = json::object();
    for (const auto& [name, s] : doc.stresses) {
      json e;
      e["level"] = s.level;
      e["weighted"] = s.weighted;
      if (s.density) {
        json dens = json::array();
        for (const auto& x : *s.density) dens.push_back(rational_to_string(x));
        e["density"] = dens;
      }
      st[name] = e;
    }
    j["stresses"] = st;
  }
  return j.dump(2) + "\n";
}

ComplexDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(e.what());
  }
  ComplexDocument doc;
  doc.format_version = require<int>(j, "format_version");
  if (doc.format_version != 1)
    fail("unsupported format_version " + std::to_string(doc.format_version));
  doc.dimension = require<int>(j, "dimension");
  doc.ambient = require<int>(j, "ambient_dim");
  if (!j.contains("vertices")) fail("missing field 'vertices'");
  doc.coords = coords_from_json(j.at("vertices"));
  doc.cells = require<std::vector<std::vector<std::vector<int>>>>(j, "cells");
  if (j.contains("pinned"))
    doc.pinned = j.at("pinned").get<std::vector<std::vector<uint8_t>>>();
  if (j.contains("orientation"))
    doc.orientation = j.at("orientation").get<std::vector<int>>();
  if (j.contains("provenance"))
    doc.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  if (j.contains("stresses")) {
    for (const auto& [name, e] : j.at("stresses").items()) {
      StressAssignment s;
      s.level = require<int>(e, "level");
      s.weighted = require<std::vector<double>>(e, "weighted");
      if (e.contains("density")) {
        VecQ dens;
        for (const auto& x : e.at("density")) dens.push_back(parse_rational_or_fail(x.get<std::string>()));
        s.density = std::move(dens);
      }
      doc.stresses[name] = std::move(s);
    }
  }
  return doc;
}

ComplexDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ComplexError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

void save_document(const std::string& path, const ComplexDocument& doc) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ComplexError("cannot write " + tmp.string());
    out << serialize_document(doc);
  }
  fs::rename(tmp, target);
}

ComplexDocument import_simplicial_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ComplexError("cannot open " + path);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok)
    if (tok != "OFF") tokens.push_back(tok);
  size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) fail("truncated mesh file");
    return tokens[pos++];
  };
  long nv = std::stol(next()), nf = std::stol(next());
  if (pos < tokens.size() && tokens[pos].find('.') == std::string::npos &&
      tokens[pos].find('/') == std::string::npos) {
    // optional edge count in the header
    long maybe_edges = std::stol(tokens[pos]);
    (void)maybe_edges;
    ++pos;
  }

  // infer ambient dimension from the token layout: all faces have the same
  // size prefix, so total = nv*amb + nf*(1+fsz); a candidate split is
  // accepted only if every face record really starts with its claimed size
  size_t remaining = tokens.size() - pos;
  int ambient = -1, fsz = -1;
  for (int a = 1; a <= 4 && ambient < 0; ++a)
    for (int s = 2; s <= 5 && ambient < 0; ++s) {
      if (size_t(nv) * size_t(a) + size_t(nf) * size_t(1 + s) != remaining) continue;
      bool ok = true;
      for (long f = 0; f < nf && ok; ++f) {
        const std::string& tok_sz =
            tokens[pos + size_t(nv) * size_t(a) + size_t(f) * size_t(1 + s)];
        ok = tok_sz == std::to_string(s);
      }
      if (ok) {
        ambient = a;
        fsz = s;
      }
    }
  if (ambient < 0) fail("inconsistent vertex/face counts in mesh file");

  ComplexDocument doc;
  doc.ambient = ambient;
  doc.dimension = fsz - 1;
  for (long v = 0; v < nv; ++v) {
    VecQ p;
    for (int a = 0; a < ambient; ++a) p.push_back(parse_rational_or_fail(next()));
    doc.coords.push_back(p);
  }
  std::vector<std::vector<int>> top;
  for (long f = 0; f < nf; ++f) {
    int cnt = std::stoi(next());
    if (cnt != fsz) fail("mixed face sizes; only simplicial meshes supported");
    std::vector<int> cell;
    for (int t = 0; t < cnt; ++t) cell.push_back(std::stoi(next()));
    top.push_back(cell);
  }

  // build the full lattice, then export through the standard path
  CellComplex K = CellComplex::from_simplices(doc.dimension, top, int(nv));
  Realization R{doc.ambient, doc.coords, NumberMode::Exact, 1e-9};
  return make_document(K, R);
}

void save_polyline(const std::string& path, const std::vector<VecD>& points,
                   const std::vector<std::pair<int, int>>& segments) {
  namespace fs = std::filesystem;
  fs::path tmp = fs::path(path);
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ComplexError("cannot write " + tmp.string());
    out.precision(17);
    for (const auto& p : points) {
      out << "v";
      for (double x : p) out << ' ' << x;
      out << '\n';
    }
    for (const auto& [a, b] : segments) out << "e " << a << ' ' << b << '\n';
  }
  fs::rename(tmp, path);
}

}  // namespace stresskit
