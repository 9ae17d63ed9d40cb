#pragma once

#include "stresskit/reciprocal.hpp"

namespace stresskit {

struct TraceOptions {
  std::optional<VecD> base_point;          // default: origin
  const VirtualBarycenters* vb = nullptr;  // default: arithmetic means
  bool randomize_flags = false;            // else lexicographically smallest
  uint64_t seed = 0;
};

struct TraceResult {
  int level = 0;
  StressAssignment stress;
  VerifyReport residuals;
};

/// The polynomial map p_k: from a level-d stress, assign to every internal
/// (k-1)-cell C the signed generalized (d-k+1)-volume of the sub-reciprocal
/// of its star. Exact rational densities when the input carries them on a
/// simplicial complex in exact mode.
TraceResult trace(const StressAssignment& s, const CellComplex& K, const Realization& R,
                  const OrientationClass& O, int k, const TraceOptions& opt = {});

struct HomogeneityReport {
  double max_relative_deviation = 0;  // trace(t s) vs t^{d-k+1} trace(s)
  int degree = 0;
};

HomogeneityReport homogeneity_check(const StressAssignment& s, const CellComplex& K,
                                    const Realization& R, const OrientationClass& O,
                                    int k, const Rational& t);

struct TensionReport {
  bool interior_all_positive = false;
  std::vector<int> nonpositive_interior;  // interior (k-1)-cells failing > 0
  std::vector<int> boundary_positive;     // faces of the outer cell, by sign
  std::vector<int> boundary_negative;
  // boundary (k-1)-cells whose d-coface count differs from d (the boundary
  // sign pattern is only guaranteed with exactly d top cells around each)
  std::vector<int> hypothesis_violations;
  int outer_cell = -1;
};

/// Sign pattern of trace(s, k) for an all-positive d-stress: interior
/// positivity plus the boundary pattern relative to the outer cell (detected
/// as the largest-volume d-cell unless given).
TensionReport tension_positivity(const StressAssignment& s, const CellComplex& K,
                                 const Realization& R, const OrientationClass& O, int k,
                                 std::optional<int> outer_cell = {});

struct JacobianReport {
  int rank = 0;
  int max_possible = 0;  // min(dim Stress_d, dim Stress_k)
  std::vector<double> singular_values;
  double gap = 0;       // sigma_rank / sigma_{rank+1}
  bool step_ok = true;  // two-step Richardson consistency of the differences
  double step_used = 0;
};

/// Central-difference Jacobian of p_k along a Stress_d basis at base stress s.
JacobianReport jacobian_rank(const CellComplex& K, const Realization& R,
                             const OrientationClass& O, int k,
                             const StressAssignment& s, double h = 0);

/// s scaled by t (weighted and, when present, density coordinates).
StressAssignment scale_stress(const StressAssignment& s, const Rational& t);

/// a + t*b; densities kept only when both operands carry them.
StressAssignment axpy_stress(const StressAssignment& a, double t,
                             const StressAssignment& b);

}  // namespace stresskit
