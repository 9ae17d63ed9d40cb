#include "stresskit/generators.hpp"

#include "stresskit/reciprocal.hpp"

#include <algorithm>
#include <functional>

namespace stresskit {

Rational rational_offset(std::mt19937_64& rng, long long bound) {
  const long long M = 9973;
  long long num = (long long)(rng() % (2 * M + 1)) - M;
  return Rational(num) / Rational(M * bound);
}

namespace {

VecQ random_point(std::mt19937_64& rng, int dim, long long scale_num, long long den) {
  VecQ p(size_t(dim), Rational(0));
  for (auto& x : p)
    x = Rational((long long)(rng() % (2 * scale_num + 1)) - scale_num, den);
  return p;
}

}  // namespace

Generated gen_cross_polytope_boundary(int n, int ambient, uint64_t seed,
                                      long long denom_bound) {
  if (ambient != n && ambient != n - 1)
    throw ComplexError("cross-polytope ambient must be n or n-1");
  std::vector<std::vector<int>> cells;
  for (uint32_t signs = 0; signs < (1u << n); ++signs) {
    std::vector<int> c;
    for (int i = 0; i < n; ++i) c.push_back(2 * i + int((signs >> i) & 1));
    cells.push_back(c);
  }
  Generated g;
  g.family = "cross-polytope";
  g.K = CellComplex::from_simplices(n - 1, cells, 2 * n);

  std::mt19937_64 rng(seed);
  // generic projection coefficients for the dropped axis
  VecQ proj(size_t(n - 1));
  for (auto& x : proj) x = Rational(1, 3) + rational_offset(rng, 10);

  g.R.ambient = ambient;
  g.R.mode = NumberMode::Exact;
  for (int i = 0; i < 2 * n; ++i) {
    int axis = i / 2;
    Rational val = (i % 2 == 0) ? 1 : -1;
    VecQ full(size_t(n), Rational(0));
    full[size_t(axis)] = val;
    VecQ p(size_t(ambient), Rational(0));
    if (ambient == n) {
      p = full;
    } else {
      for (int t = 0; t < n - 1; ++t) p[size_t(t)] = full[size_t(t)] + proj[size_t(t)] * full[size_t(n - 1)];
    }
    for (auto& x : p) x += rational_offset(rng, denom_bound);
    g.R.coords.push_back(p);
  }
  return g;
}

Generated gen_schlegel_simplex(int n) {
  if (n < 2) throw ComplexError("schlegel simplex needs n >= 2");
  std::vector<std::vector<int>> cells;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> c;
    for (int v = 0; v <= n; ++v)
      if (v != skip) c.push_back(v);
    cells.push_back(c);
  }
  Generated g;
  g.family = "schlegel-simplex";
  g.K = CellComplex::from_simplices(n - 1, cells, n + 1);
  g.R.ambient = n - 1;
  g.R.mode = NumberMode::Exact;
  // vertex 0 at the barycenter of the outer simplex 1..n
  VecQ center(size_t(n - 1), Rational(1, unsigned(n)));
  g.R.coords.push_back(center);
  g.R.coords.push_back(VecQ(size_t(n - 1), Rational(0)));
  for (int i = 0; i < n - 1; ++i) {
    VecQ e(size_t(n - 1), Rational(0));
    e[size_t(i)] = 1;
    g.R.coords.push_back(e);
  }
  return g;
}

Generated gen_stacked_sphere(int num_vertices, int ambient, uint64_t seed,
                             long long denom_bound) {
  if (num_vertices < 4) throw ComplexError("stacked sphere needs >= 4 vertices");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> tris = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  int nv = 4;
  while (nv < num_vertices) {
    size_t pick = rng() % tris.size();
    std::vector<int> t = tris[pick];
    tris.erase(tris.begin() + long(pick));
    for (int drop = 0; drop < 3; ++drop) {
      std::vector<int> nt;
      for (int j = 0; j < 3; ++j)
        if (j != drop) nt.push_back(t[size_t(j)]);
      nt.push_back(nv);
      std::sort(nt.begin(), nt.end());
      tris.push_back(nt);
    }
    ++nv;
  }
  Generated g;
  g.family = "stacked-sphere";
  g.K = CellComplex::from_simplices(2, tris, nv);
  g.R.ambient = ambient;
  g.R.mode = NumberMode::Exact;
  for (int i = 0; i < nv; ++i) {
    VecQ p = random_point(rng, ambient, 4 * denom_bound, denom_bound);
    g.R.coords.push_back(p);
  }
  return g;
}

namespace {

int orientation_sign_q(const Rational& q) { return q > 0 ? 1 : q < 0 ? -1 : 0; }

}  // namespace

Generated gen_convex_polytope(int num_vertices, int d, uint64_t seed) {
  if (d != 2 && d != 3) throw ComplexError("convex polytope generator supports d = 2, 3");
  for (uint64_t attempt = 0; attempt < 32; ++attempt) {
    std::mt19937_64 rng(seed + attempt * 7919);
    std::vector<VecQ> pts;
    for (int i = 0; i < num_vertices; ++i) {
      // near the unit sphere: random direction, rational-rounded
      VecD dir(size_t(d), 0.0);
      double n2 = 0;
      for (auto& x : dir) {
        x = double(int64_t(rng() % 20001)) / 10000.0 - 1.0;
        n2 += x * x;
      }
      if (n2 < 1e-3) { --i; continue; }
      VecQ p(size_t(d), Rational(0));
      for (int t = 0; t < d; ++t)
        p[size_t(t)] = Rational((long long)std::llround(dir[size_t(t)] / std::sqrt(n2) * 10000), 10000);
      pts.push_back(p);
    }

    // brute-force hull facets: d-subsets with all remaining points strictly
    // on one side
    std::vector<std::vector<int>> facets;
    bool degenerate = false;
    std::vector<char> used(pts.size(), 0);
    auto consider = [&](const std::vector<int>& S) {
      std::vector<VecQ> edges;
      for (int j = 1; j < d; ++j) edges.push_back(vsub(pts[size_t(S[size_t(j)])], pts[size_t(S[0])]));
      VecQ N = generalized_cross(d, edges);
      bool zero = std::all_of(N.begin(), N.end(), [](const Rational& q) { return q == 0; });
      if (zero) return;
      int pos = 0, neg = 0, on = 0;
      for (size_t l = 0; l < pts.size(); ++l) {
        if (std::find(S.begin(), S.end(), int(l)) != S.end()) continue;
        int sg = orientation_sign_q(vdot(N, vsub(pts[l], pts[size_t(S[0])])));
        (sg > 0 ? pos : sg < 0 ? neg : on)++;
      }
      if (on && (pos == 0 || neg == 0)) degenerate = true;
      if (on == 0 && (pos == 0 || neg == 0)) {
        facets.push_back(S);
        for (int v : S) used[size_t(v)] = 1;
      }
    };
    if (d == 2) {
      for (int i = 0; i < num_vertices; ++i)
        for (int j = i + 1; j < num_vertices; ++j) consider({i, j});
    } else {
      for (int i = 0; i < num_vertices; ++i)
        for (int j = i + 1; j < num_vertices; ++j)
          for (int l = j + 1; l < num_vertices; ++l) consider({i, j, l});
    }
    if (degenerate || facets.size() < size_t(d + 1)) continue;

    // drop non-hull points, remap
    std::vector<int> remap(pts.size(), -1);
    int next = 0;
    for (size_t v = 0; v < pts.size(); ++v)
      if (used[v]) remap[v] = next++;
    for (auto& f : facets)
      for (auto& v : f) v = remap[size_t(v)];

    Generated g;
    g.family = "convex-polytope";
    g.K = CellComplex::from_simplices(d - 1, facets, next);
    g.R.ambient = d;
    g.R.mode = NumberMode::Exact;
    g.R.coords.resize(size_t(next));
    for (size_t v = 0; v < pts.size(); ++v)
      if (used[v]) g.R.coords[size_t(remap[v])] = pts[v];
    if (!g.K.closed()) continue;
    return g;
  }
  throw ComplexError("could not generate a simplicial convex polytope (degenerate seeds)");
}

Generated gen_lifted_projection(const std::vector<VecQ>& points, const VecQ& heights,
                                LiftSide side) {
  if (points.empty() || points.size() != heights.size())
    throw ComplexError("lifted projection: points/heights mismatch");
  int d = int(points[0].size());
  int m = int(points.size());
  if (affine_rank(points) != d)
    throw ComplexError("lifted projection: points do not affinely span R^d");

  // every (d+1)-subset that supports a lower/upper hull facet
  std::vector<std::vector<int>> facets;
  std::vector<VecQ> gradients;  // affine function a.x + b per facet (a only)
  auto process = [&](const std::vector<int>& S) {
    std::vector<VecQ> base;
    for (int i : S) base.push_back(points[size_t(i)]);
    if (affine_rank(base) != d) return;
    // solve a.p_i + b = h_i
    QMatrix M(size_t(d + 1), size_t(d + 1));
    VecQ rhs(size_t(d + 1));
    for (int r = 0; r <= d; ++r) {
      for (int c = 0; c < d; ++c) M(size_t(r), size_t(c)) = points[size_t(S[size_t(r)])][size_t(c)];
      M(size_t(r), size_t(d)) = 1;
      rhs[size_t(r)] = heights[size_t(S[size_t(r)])];
    }
    auto sol = solve(M, rhs);
    if (!sol) return;
    VecQ a(sol->begin(), sol->begin() + d);
    for (int j = 0; j < m; ++j) {
      if (std::find(S.begin(), S.end(), j) != S.end()) continue;
      Rational lj = (*sol)[size_t(d)];
      for (int c = 0; c < d; ++c) lj += a[size_t(c)] * points[size_t(j)][size_t(c)];
      Rational gap = heights[size_t(j)] - lj;
      if (gap == 0) throw ComplexError("degenerate heights: coplanar lifted facet");
      bool ok = side == LiftSide::Lower ? gap > 0 : gap < 0;
      if (!ok) return;
    }
    facets.push_back(S);
    gradients.push_back(a);
  };
  std::vector<int> S(size_t(d + 1));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d + 1) {
      process(S);
      return;
    }
    for (int i = start; i < m; ++i) {
      S[size_t(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (facets.empty()) throw ComplexError("lifted projection produced no facets");

  // drop unused points
  std::vector<int> remap(size_t(m), -1);
  int next = 0;
  for (const auto& f : facets)
    for (int v : f)
      if (remap[size_t(v)] < 0) remap[size_t(v)] = 0;
  for (int v = 0; v < m; ++v)
    if (remap[size_t(v)] == 0) remap[size_t(v)] = next++;
    else remap[size_t(v)] = -1;
  std::vector<std::vector<int>> cells = facets;
  for (auto& f : cells)
    for (auto& v : f) v = remap[size_t(v)];

  Generated g;
  g.family = "lifted-projection";
  g.K = CellComplex::from_simplices(d, cells, next);
  g.R.ambient = d;
  g.R.mode = NumberMode::Exact;
  g.R.coords.resize(size_t(next));
  for (int v = 0; v < m; ++v)
    if (remap[size_t(v)] >= 0) g.R.coords[size_t(remap[size_t(v)])] = points[size_t(v)];

  // induced d-stress: the reciprocal of the lift is the gradient diagram, so
  // the density on an internal facet comes from the gradient jump across it
  auto O = orient(g.K);
  if (!O) throw ComplexError("lifted projection: non-orientable (unexpected)");
  StressAssignment s;
  s.level = d;
  VecQ dens(g.K.count(d - 1), Rational(0));
  std::vector<int> csign(g.K.count(d));
  for (size_t t = 0; t < csign.size(); ++t)
    csign[t] = O->sign[t] * cell_geometric_sign(g.K, g.R, int(t));
  Rational fact = 1;
  for (int i = 2; i <= d - 1; ++i) fact *= i;
  for (size_t f = 0; f < g.K.count(d - 1); ++f) {
    const Cell& F = g.K.cell(d - 1, int(f));
    if (!F.internal) continue;
    const auto& cf = g.K.cofaces(d - 1, int(f));
    if (cf.size() != 2) continue;
    int t1 = cf[0], t2 = cf[1];
    std::vector<VecQ> pts, edges;
    for (int v : F.vertices) pts.push_back(g.R.coords[size_t(v)]);
    for (size_t i = 1; i < pts.size(); ++i) edges.push_back(vsub(pts[i], pts[0]));
    VecQ N = generalized_cross(d, edges);
    Rational nn = vdot(N, N);
    VecQ da = vsub(gradients[size_t(t2)], gradients[size_t(t1)]);
    // da = mu * N exactly; step(t1 -> t2) = rho * sigma1 * N / (d-1)!
    Rational mu = vdot(da, N) / nn;
    VecQ alt = altitude_vector(g.K, g.R, d, t1, int(f));
    int sigma1 = -csign[size_t(t1)] * orientation_sign_q(vdot(N, alt));
    dens[f] = fact * mu * sigma1;
  }
  // sign-normalize: a convex lift should carry positive interior densities
  bool any_pos = false, any_neg = false;
  for (size_t f = 0; f < dens.size(); ++f) {
    if (!g.K.cell(d - 1, int(f)).internal) continue;
    (dens[f] > 0 ? any_pos : any_neg) = true;
  }
  if (any_neg && !any_pos)
    for (auto& x : dens) x = -x;
  s.weighted = densities_to_weighted(g.K, g.R, d, dens);
  s.density = std::move(dens);
  g.stress = std::move(s);
  return g;
}

Generated gen_lifted_grid(int n, int d, uint64_t seed, long long denom_bound) {
  std::mt19937_64 rng(seed);
  std::vector<VecQ> pts;
  if (d == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pts.push_back({Rational(i) + rational_offset(rng, denom_bound),
                       Rational(j) + rational_offset(rng, denom_bound)});
  } else if (d == 3) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          pts.push_back({Rational(i) + rational_offset(rng, denom_bound),
                         Rational(j) + rational_offset(rng, denom_bound),
                         Rational(l) + rational_offset(rng, denom_bound)});
    for (int extra = 0; extra < n; ++extra)
      pts.push_back({Rational(1, 2) + rational_offset(rng, 4),
                     Rational(1, 2) + rational_offset(rng, 4),
                     Rational(1, 2) + rational_offset(rng, 4)});
  } else {
    throw ComplexError("lifted grid supports d = 2, 3");
  }
  VecQ heights;
  for (const auto& p : pts) {
    Rational h = 0;
    for (const auto& x : p) h += x * x;
    heights.push_back(h + rational_offset(rng, denom_bound));
  }
  Generated g = gen_lifted_projection(pts, heights, LiftSide::Lower);
  g.family = "lifted-grid";
  return g;
}

Generated gen_twisted_hexagon() {
  // non-regular "spiral" triangulation: outer triangle, twisted inner
  // triangle, quads split by cyclically chosen diagonals
  std::vector<VecQ> pts = {
      {Rational(0), Rational(0)}, {Rational(4), Rational(0)}, {Rational(0), Rational(4)},
      {Rational(1), Rational(1)}, {Rational(2), Rational(1)}, {Rational(1), Rational(2)}};
  std::vector<std::vector<int>> tris = {
      {3, 4, 5},            // inner triangle
      {0, 1, 3}, {1, 4, 3}, // bottom quad, diagonal a2-b1
      {1, 2, 4}, {2, 5, 4}, // right quad, diagonal a3-b2
      {2, 0, 5}, {0, 3, 5}  // left quad, diagonal a1-b3
  };
  Generated g;
  g.family = "twisted-hexagon";
  g.K = CellComplex::from_simplices(2, tris, 6);
  g.R.ambient = 2;
  g.R.mode = NumberMode::Exact;
  g.R.coords = pts;
  return g;
}

Generated generate(const GeneratorConfig& cfg) {
  Generated g;
  if (cfg.family == "cross-polytope")
    g = gen_cross_polytope_boundary(cfg.n, cfg.ambient, cfg.seed, cfg.denominator_bound);
  else if (cfg.family == "schlegel-simplex")
    g = gen_schlegel_simplex(cfg.n);
  else if (cfg.family == "stacked-sphere")
    g = gen_stacked_sphere(cfg.n, cfg.ambient, cfg.seed, cfg.denominator_bound);
  else if (cfg.family == "convex-polytope")
    g = gen_convex_polytope(cfg.n, cfg.ambient, cfg.seed);
  else if (cfg.family == "lifted-grid")
    g = gen_lifted_grid(cfg.n, cfg.ambient, cfg.seed, cfg.denominator_bound);
  else if (cfg.family == "twisted-hexagon")
    g = gen_twisted_hexagon();
  else
    throw ComplexError("unknown generator family: " + cfg.family);
  g.R.mode = cfg.mode;
  return g;
}

}  // namespace stresskit
