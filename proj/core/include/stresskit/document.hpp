#pragma once

#include "stresskit/generators.hpp"

#include <map>
#include <string>

namespace stresskit {

/// On-disk description of a realized complex: versioned JSON with exact
/// rational coordinate strings, cells-by-dimension facet lists, pin flags,
/// optional orientation signs and named stresses.
struct ComplexDocument {
  int format_version = 1;
  int dimension = 0;
  int ambient = 0;
  std::vector<VecQ> coords;
  // cells[k-1] lists the k-cells (k = 1..dimension) as facet index lists;
  // 1-cells reference vertices directly
  std::vector<std::vector<std::vector<int>>> cells;
  // pinned flags per dimension 0..dimension (empty vector = derive defaults)
  std::vector<std::vector<uint8_t>> pinned;
  std::optional<std::vector<int>> orientation;
  std::map<std::string, StressAssignment> stresses;
  std::map<std::string, std::string> provenance;  // generator family, seed, ...
};

ComplexDocument make_document(const CellComplex& K, const Realization& R);
ComplexDocument to_document(const Generated& g);

/// Reconstructs the complex and realization (mode/tolerance are the
/// caller's choice; defaults exact, 1e-9).
struct Instantiated {
  CellComplex K;
  Realization R;
};
Instantiated instantiate(const ComplexDocument& doc,
                         NumberMode mode = NumberMode::Exact, double tol = 1e-9);

std::string serialize_document(const ComplexDocument& doc);
ComplexDocument parse_document(const std::string& text);

ComplexDocument load_document(const std::string& path);
/// Atomic write: temp file in the same directory, then rename.
void save_document(const std::string& path, const ComplexDocument& doc);

/// OFF-style simplicial mesh import: counts line, vertex coordinate lines
/// (decimals or p/q), then face lines "k v1 ... vk" of equal-size simplices.
ComplexDocument import_simplicial_mesh(const std::string& path);

/// Flat polyline geometry export (one "v x y .." per point, "e i j" per
/// segment) for plotting reciprocals and traces.
void save_polyline(const std::string& path, const std::vector<VecD>& points,
                   const std::vector<std::pair<int, int>>& segments);

}  // namespace stresskit
