#pragma once

#include "stresskit/realization.hpp"

#include <Eigen/Dense>

namespace stresskit {

/// Level-k stress. `weighted` holds s(C) * vol_{k-1}(C) per (k-1)-cell
/// (zero on pinned cells); `density` holds the exact per-cell coefficients
/// s(C) when the exact pipeline produced them (simplicial inputs only).
struct StressAssignment {
  int level = 0;
  VecD weighted;
  std::optional<VecQ> density;
};

/// Geometric incidence matrix whose left null space (in weighted
/// coordinates) is Stress_level. Rows are stress carriers, columns come in
/// ambient-sized blocks per active equilibrium cell.
struct AssembledMatrix {
  int level = 0;
  std::vector<int> carriers;     // non-pinned (level-1)-cells
  std::vector<int> constraints;  // internal non-pinned (level-2)-cells
  Eigen::MatrixXd M;             // carriers x (ambient * constraints), unit normals
};

AssembledMatrix assemble(const CellComplex& K, const Realization& R, int level);

/// Same matrix with rational altitude vectors instead of unit normals; its
/// left null space is Stress_level in density coordinates (simplicial only).
struct AssembledMatrixExact {
  int level = 0;
  std::vector<int> carriers;
  std::vector<int> constraints;
  QMatrix M;
};

AssembledMatrixExact assemble_exact(const CellComplex& K, const Realization& R, int level);

struct StressBasis {
  int level = 0;
  std::vector<StressAssignment> basis;
  double spectral_gap = std::numeric_limits<double>::infinity();
  bool ambiguous = false;  // floating mode, gap below 10x threshold
};

StressBasis stress_basis(const CellComplex& K, const Realization& R, int level);

struct VerifyReport {
  double max_relative_residual = 0;
  bool exact_zero = false;  // set when checked with exact densities
  std::vector<double> per_constraint;  // aligned with assemble().constraints
};

VerifyReport verify_stress(const StressAssignment& s, const CellComplex& K,
                           const Realization& R);

struct RigidityReport {
  bool rigid = false;
  size_t rank = 0;
  size_t load_dim = 0;  // d*V - C(d+1,2)
  bool formula_applicable = true;  // enough affinely independent vertices
};

RigidityReport is_statically_rigid(const CellComplex& K, const Realization& R);

/// Weighted view of an exact density vector (w = s * vol).
VecD densities_to_weighted(const CellComplex& K, const Realization& R, int level,
                           const VecQ& density);

}  // namespace stresskit
