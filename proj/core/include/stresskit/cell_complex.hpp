#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stresskit {

struct CellRef {
  int dim = 0;
  int index = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct Cell {
  std::vector<int> facets;  // indices into the (dim-1)-cell list; empty for vertices
  std::vector<int> signs;   // incidence signs, aligned with facets
  std::vector<int> vertices;  // sorted vertex closure
  bool internal = true;
  bool pinned = false;
};

/// A maximal-from-below chain of cells with consecutive dimensions.
struct Flag {
  std::vector<CellRef> chain;  // ascending dimension
};

struct OrientationClass {
  std::vector<int> sign;  // per d-cell, +1/-1
};

struct FVector {
  std::vector<long long> f;  // f[0] = f_{-1} = 1, f[k+1] = #k-cells
  long long operator[](int k) const { return f[size_t(k + 1)]; }
  int top_dim() const { return int(f.size()) - 2; }
};

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input description for build(): cells listed per dimension by facet
/// references. Vertices are implicit (count given); 1-cells may reference
/// vertices directly.
struct ComplexSpec {
  int dim = 0;
  int num_vertices = 0;
  // per dimension 1..dim: each cell as a list of facet indices
  std::vector<std::vector<std::vector<int>>> cells;
  // optional explicit pinned flags, per dimension 0..dim (empty = derive)
  std::vector<std::vector<uint8_t>> pinned;
};

class CellComplex {
 public:
  int dim() const { return dim_; }
  size_t count(int k) const { return k < 0 || k > dim_ ? 0 : cells_[k].size(); }
  const Cell& cell(int k, int i) const { return cells_[k][i]; }
  const std::vector<Cell>& cells(int k) const { return cells_[k]; }
  const std::vector<int>& cofaces(int k, int i) const { return cofaces_[k][i]; }

  /// Sorted j-dimensional faces of cell (k,i); faces(k,i,k) = {i}.
  const std::vector<int>& faces(int k, int i, int j) const {
    return faces_[k][i][j];
  }
  bool has_face(int k, int i, int j, int fj) const;

  /// Incidence sign of facet f (an index into the (k-1)-cells) in cell (k,i);
  /// 0 if not a facet.
  int incidence(int k, int i, int f) const;

  bool simplicial() const { return simplicial_; }
  bool closed() const;  // every (d-1)-cell has exactly two d-cofaces

  /// Cells of every dimension containing (k,i), grouped by dimension (the
  /// closed star); entry [j] lists j-cell indices.
  std::vector<std::vector<int>> star(int k, int i) const;

  static CellComplex from_simplices(int d, std::vector<std::vector<int>> top_cells,
                                    int num_vertices = -1);
  static CellComplex build(const ComplexSpec& spec);

  void set_pinned(int k, int i, bool pinned) { cells_[k][i].pinned = pinned; }

 private:
  void finalize();  // closure lists, cofaces, internal/pinned flags, checks

  int dim_ = 0;
  bool simplicial_ = false;
  std::vector<std::vector<Cell>> cells_;              // [k][i]
  std::vector<std::vector<std::vector<int>>> cofaces_;  // [k][i] -> (k+1)-cells
  // [k][i][j] -> sorted j-faces of cell (k,i)
  std::vector<std::vector<std::vector<std::vector<int>>>> faces_;
};

/// Abstract simplicial complex on integer vertices; used for links, dual
/// blocks and homology of derived complexes.
struct SimplicialComplex {
  // simplices[k] = sorted (k+1)-vertex tuples, k = 0..top
  std::vector<std::vector<std::vector<int>>> simplices;
  int dim() const { return int(simplices.size()) - 1; }
  std::vector<size_t> betti_mod2() const;
};

int homology_rank_mod2(const CellComplex& K, int k);

/// Consistent d-cycle signs, canonicalized so the smallest-index d-cell of
/// each dual-graph component gets +1. nullopt if the top mod-2 cycle does
/// not lift to integer signs.
std::optional<OrientationClass> orient(const CellComplex& K);

FVector f_vector(const CellComplex& K);
long long g_number(const FVector& f, int k, int ambient);
long long h_number(const FVector& f, int k, int ambient);
long long euler_characteristic(const FVector& f);

bool is_k_primitive(const CellComplex& K, int k);

struct StarLinkDual {
  std::vector<std::vector<int>> star;  // cells >= C, grouped by dimension
  // order complex of the strict upper interval {E : E > C}; vertices are
  // flattened cell ids. Barycentric model of the link.
  SimplicialComplex link;
  // order complex of {E : E >= C}: barycentric model of the dual block
  SimplicialComplex dual_block;
  std::vector<CellRef> poset_vertices;  // id -> cell, shared by link/dual ids
};

StarLinkDual stars_links_dual(const CellComplex& K, int k, int i);

/// Every cell link has the mod-2 homology of a sphere (internal cells) or a
/// disk/point (boundary cells). Returns an explanation on failure.
std::optional<std::string> manifold_defect(const CellComplex& K);

/// Upper flags C = E_{k} < E_{k+1} < ... < E_d with consecutive dimensions;
/// each returned chain starts at (k,i).
std::vector<std::vector<CellRef>> ascending_flags(const CellComplex& K, int k, int i);

/// Lexicographically smallest descending chain (k,i) > ... > vertex,
/// returned ascending. For k = 0 the chain is just the vertex.
std::vector<CellRef> canonical_descending_flag(const CellComplex& K, int k, int i);
std::vector<std::vector<CellRef>> descending_flags(const CellComplex& K, int k, int i);

/// Product of incidence signs along a chain of consecutive-dimension cells.
int flag_incidence_product(const CellComplex& K, const std::vector<CellRef>& chain);

}  // namespace stresskit
