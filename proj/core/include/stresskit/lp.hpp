#pragma once

#include "stresskit/stress.hpp"

namespace stresskit {

/// Exact-rational LP in standard form: min c^T x, A x = b, x >= 0.
/// Two-phase primal simplex with Bland's rule (terminates, desk scale).
struct StandardLP {
  QMatrix A;
  VecQ b;
  VecQ c;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  VecQ x;          // primal solution (Optimal)
  Rational value;  // objective (Optimal)
  VecQ farkas_y;   // Infeasible: y with y^T A <= 0 componentwise, y^T b > 0
};

LPSolution solve_lp(const StandardLP& lp);

enum class PositiveStressStatus { Found, Infeasible, NumericallyAmbiguous };

struct PositiveStressResult {
  PositiveStressStatus status = PositiveStressStatus::Infeasible;
  StressAssignment stress;      // Found: min interior coefficient scaled to 1
  Rational min_coefficient;     // optimal min coefficient before rescaling
  // Infeasible: nonnegative weights on interior cells, not all zero, that
  // annihilate every kernel element (Farkas separating functional)
  std::vector<std::pair<int, Rational>> certificate;
};

/// Searches the level-k stress space for an element strictly positive on
/// every non-pinned internal (k-1)-cell.
PositiveStressResult find_positive_stress(const CellComplex& K, const Realization& R,
                                          int level);

}  // namespace stresskit
