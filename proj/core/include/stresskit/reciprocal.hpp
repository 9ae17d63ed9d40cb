#pragma once

#include "stresskit/stress.hpp"

#include <map>

namespace stresskit {

enum class EdgeLabel { Proper, Improper, Degenerate };

struct ReciprocalEdge {
  int facet = 0;      // (d-1)-cell index
  int from_cell = 0;  // d-cell indices
  int to_cell = 0;
  EdgeLabel label = EdgeLabel::Degenerate;
};

/// One point per d-cell, one segment per internal facet, perpendicular to
/// that facet; edge length equals |weighted stress| of the facet.
struct Reciprocal {
  std::vector<int> cells;   // d-cell indices carrying points
  std::vector<VecD> points;  // aligned with `cells`
  std::optional<std::vector<VecQ>> points_exact;
  std::vector<ReciprocalEdge> edges;
  std::vector<int> index_of;  // d-cell index -> position in `cells`, -1 if absent
  int base_cell = 0;
  double max_closure_residual = 0;

  const VecD& point(int dcell) const { return points[size_t(index_of[size_t(dcell)])]; }
};

enum class ReciprocalStatus { Ok, ClosureFailure, DisconnectedDualGraph };

struct ReciprocalResult {
  ReciprocalStatus status = ReciprocalStatus::Ok;
  Reciprocal rec;
  std::string message;
};

/// Integrates the d-stress over a BFS spanning tree of the dual graph; the
/// step across facet F out of cell T is weighted(F) times the unit facet
/// normal cooriented out of T by the orientation class. Closure is verified
/// on every co-tree dual edge.
ReciprocalResult build_reciprocal(const StressAssignment& s, const CellComplex& K,
                                  const Realization& R, const OrientationClass& O,
                                  int base_cell = 0, const VecD* base_point = nullptr);

/// Same construction restricted to the star of `center`: points for its
/// d-cofaces, dual edges only through facets containing `center`.
ReciprocalResult build_sub_reciprocal(const StressAssignment& s, const CellComplex& K,
                                      const Realization& R, const OrientationClass& O,
                                      CellRef center);

/// Re-labels every edge proper/improper/degenerate by the sign of the built
/// edge vector against the orientation-cooriented facet normal.
void classify_edges(Reciprocal& rec, const CellComplex& K, const Realization& R,
                    const OrientationClass& O, double tol = 1e-9);

/// Affine-combination overrides for dual-face barycenters: cell (dim,index)
/// -> weights over d-cell indices (must sum to 1). Cells without an entry use
/// the arithmetic mean of their d-cofaces' reciprocal points.
struct VirtualBarycenters {
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> weights;
};

/// The m-vector (1/m!) sum over ascending flags C < E_1 < ... < E_m of
/// sign(flag) (vbc(E_1)-p)^...^(vbc(E_m)-p), m = d - dim C: the generalized
/// volume element of the sub-reciprocal R(C).
MultiVector<double> sub_reciprocal_mv(const Reciprocal& rec, const CellComplex& K,
                                      const OrientationClass& O, CellRef C,
                                      const VecD& p, const VirtualBarycenters* vb);

/// Exact twin; requires rec.points_exact.
MultiVector<Rational> sub_reciprocal_mv_exact(const Reciprocal& rec, const CellComplex& K,
                                              const OrientationClass& O, CellRef C,
                                              const VecQ& p, const VirtualBarycenters* vb);

/// Orientation reference of the realized complex: orientation-class sign
/// times geometric sign of the smallest-index d-cell. Flips with a global
/// orientation flip; +1 for an embedded complex oriented geometrically.
int orientation_reference(const CellComplex& K, const Realization& R,
                          const OrientationClass& O);

/// Signed generalized (d - dim C)-volume of the sub-reciprocal R(C) in the
/// plane perpendicular to C, oriented through `flag` (an ascending chain
/// inside C ending at C). dim C = d returns 1 by convention.
double reciprocal_volume(const Reciprocal& rec, const CellComplex& K,
                         const Realization& R, const OrientationClass& O, CellRef C,
                         const std::vector<CellRef>& flag,
                         const VirtualBarycenters* vb = nullptr,
                         const VecD* base_point = nullptr);

}  // namespace stresskit
