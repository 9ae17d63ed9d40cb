#pragma once

#include "stresskit/stress.hpp"

#include <random>

namespace stresskit {

/// A generated example: complex, realization, and (for liftings) the induced
/// top-level stress.
struct Generated {
  CellComplex K;
  Realization R;
  std::optional<StressAssignment> stress;
  std::string family;
};

struct GeneratorConfig {
  std::string family;  // cross-polytope | schlegel-simplex | stacked-sphere |
                       // convex-polytope | lifted-grid | twisted-hexagon
  int n = 4;           // family size parameter
  int ambient = 3;
  uint64_t seed = 0;
  long long denominator_bound = 10000;  // perturbations bounded by 1/bound
  NumberMode mode = NumberMode::Exact;
};

/// Uniform rational in [-1/bound, 1/bound] with bounded denominator.
Rational rational_offset(std::mt19937_64& rng, long long bound);

/// Boundary of the n-dimensional cross-polytope as a simplicial (n-1)-sphere
/// on 2n vertices; realized from the +-e_i pattern (projected to R^{n-1}
/// when ambient = n-1) with a seeded generic perturbation.
Generated gen_cross_polytope_boundary(int n, int ambient, uint64_t seed,
                                      long long denom_bound = 10000);

/// Schlegel diagram of the n-simplex in R^{n-1}: the closed complex of all
/// n+1 facets, with one vertex realized inside the simplex of the others.
Generated gen_schlegel_simplex(int n);

/// Random stacked 2-sphere on num_vertices vertices (repeated stellar
/// subdivisions of the tetrahedron boundary), realized generically in
/// R^ambient, ambient in {2, 3}.
Generated gen_stacked_sphere(int num_vertices, int ambient, uint64_t seed,
                             long long denom_bound = 10000);

/// Boundary of the convex hull of num_vertices random rational points near
/// the unit sphere in R^d (d = 2 or 3); simplicial for generic seeds.
/// The complex has dimension d-1 and is realized in R^d.
Generated gen_convex_polytope(int num_vertices, int d, uint64_t seed);

/// Regular subdivision of the given points from the chosen side of the
/// lifted hull, with the induced d-stress (exact densities). Boundary cells
/// are pinned. Throws on non-spanning points or degenerate heights.
enum class LiftSide { Lower, Upper };
Generated gen_lifted_projection(const std::vector<VecQ>& points, const VecQ& heights,
                                LiftSide side);

/// Grid-like planar/spatial convex lifting example: points on a grid (plus
/// centers) lifted by |x|^2; convenience wrapper over gen_lifted_projection.
Generated gen_lifted_grid(int n, int d, uint64_t seed, long long denom_bound = 10000);

/// A non-regular triangulation of a triangle: twisted inner triangle, outer
/// boundary pinned. Its interior stress space admits no positive element.
Generated gen_twisted_hexagon();

/// Dispatch by config.family; throws on unknown family.
Generated generate(const GeneratorConfig& cfg);

}  // namespace stresskit
