#pragma once

#include "stresskit/cell_complex.hpp"
#include "stresskit/exact_linalg.hpp"
#include "stresskit/multivector.hpp"
#include "stresskit/rational.hpp"

#include <cmath>

namespace stresskit {

enum class NumberMode { Exact, Floating };

/// PL realization: exact rational coordinates per vertex. The mode selects
/// which downstream solvers run (rational elimination vs SVD); cell-local
/// geometry (altitudes, normals, volumes) is derived from the rational
/// coordinates either way.
struct Realization {
  int ambient = 0;
  std::vector<VecQ> coords;
  NumberMode mode = NumberMode::Floating;
  double tol = 1e-9;

  VecD coord_d(int v) const { return to_vecd(coords[size_t(v)]); }
};

struct NonFlatCell {
  CellRef cell;
  int measured_rank = 0;
};

struct FlatnessReport {
  bool ok = true;
  std::vector<NonFlatCell> offenders;
};

/// Affine rank of each cell's vertex set must equal the cell dimension
/// (degenerate cells are rejected, not carried).
FlatnessReport validate_flatness(const CellComplex& K, const Realization& R);

VecQ barycenter(const CellComplex& K, const Realization& R, int k, int i);

/// Independent edge vectors spanning the linear space of the affine hull.
std::vector<VecQ> affine_basis(const std::vector<VecQ>& points);
int affine_rank(const std::vector<VecQ>& points);

/// Orthogonal projection of v onto span(basis); basis need not be orthogonal.
VecQ project_onto_span(const std::vector<VecQ>& basis, const VecQ& v);

/// Unnormalized inner altitude of cell C = (k,ci) at facet F = (k-1,fi):
/// lies in lin(C), orthogonal to lin(F), points toward the cell interior.
/// For a simplex this is the vector from the foot on aff(F) to the opposite
/// vertex, so |alt| * vol(F) = (k) ... vol relations used by the exact path.
VecQ altitude_vector(const CellComplex& K, const Realization& R, int k, int ci, int fi);

/// Unit version of altitude_vector. Throws on degenerate (zero) altitude.
VecD inner_unit_normal(const CellComplex& K, const Realization& R, int k, int ci, int fi);

/// Generalized cross-product normal of a (d-1)-simplex in R^d given by
/// its vertex list: orthogonal to the simplex, length (d-1)! * vol_{d-1},
/// oriented so det[edges..., N] > 0.
template <class S>
std::vector<S> simplex_normal(const std::vector<std::vector<S>>& verts) {
  std::vector<std::vector<S>> edges;
  for (size_t i = 1; i < verts.size(); ++i) edges.push_back(vsub(verts[i], verts[0]));
  return generalized_cross(int(verts[0].size()), edges);
}

/// Oriented codimension-1 cycle: simplices as point tuples with a sign.
template <class S>
struct OrientedCycle {
  int ambient = 0;
  struct Simplex {
    std::vector<std::vector<S>> verts;  // exactly `ambient` points
    int sign = 1;
  };
  std::vector<Simplex> simplices;
};

using OrientedCycleQ = OrientedCycle<Rational>;
using OrientedCycleD = OrientedCycle<double>;

template <class S>
S det_from_point(const typename OrientedCycle<S>::Simplex& s, const std::vector<S>& p) {
  int d = int(p.size());
  QMatrix dummy;  // not used; generic determinant below
  (void)dummy;
  // determinant of rows v_i - p
  std::vector<std::vector<S>> rows;
  for (const auto& v : s.verts) rows.push_back(vsub(v, p));
  // wedge of all rows: coefficient of the volume form
  MultiVector<S> w = wedge_all(d, rows);
  return w.c[(size_t(1) << d) - 1];
}

/// Def-3.1 volume: (1/d!) sum over oriented faces of det[v_i - p].
template <class S>
S generalized_volume(const OrientedCycle<S>& cycle, const std::vector<S>& p) {
  int d = cycle.ambient;
  S acc{0};
  for (const auto& s : cycle.simplices) {
    S det = det_from_point<S>(s, p);
    acc += s.sign > 0 ? det : -det;
  }
  S fact{1};
  for (int i = 2; i <= d; ++i) fact *= S(i);
  return acc / fact;
}

/// Slab form: (1/d) sum dist(p, aff F) * Vol_{d-1}(F, p), with the face
/// volume taken in aff(F) oriented away from p. Floating-point route,
/// deliberately independent of the determinant sum.
double slab_volume(const OrientedCycleD& cycle, const VecD& p);

struct FlagFrame {
  int sign = 0;                  // orientation-class-weighted frame sign
  std::vector<VecQ> normals;     // altitude normals along the flag
};

/// Ordered altitude-normal tuple of a full flag ending at a d-cell, and the
/// sign epsilon(top) * sgn det[n_1..n_d].
FlagFrame flag_frame_sign(const CellComplex& K, const Realization& R,
                          const std::vector<CellRef>& flag, const OrientationClass& O);

/// Geometric orientation of a realized d-cell relative to its combinatorial
/// incidence signs (+1 if any descending flag's incidence product matches
/// the sign of its altitude-frame determinant).
int cell_geometric_sign(const CellComplex& K, const Realization& R, int i);

/// Signed volume of a realized cell (k,ci) of any dimension, via the flag
/// decomposition of its barycentric triangulation; returns the unsigned
/// k-volume. Exact squared value is rational; this returns a double.
double cell_volume(const CellComplex& K, const Realization& R, int k, int ci);

double norm_d(const VecD& v);

}  // namespace stresskit
