#include "stresskit/reciprocal.hpp"

#include <algorithm>
#include <deque>

namespace stresskit {

namespace {

// Orientation-cooriented facet data for the integration steps.
struct StepGeometry {
  const CellComplex& K;
  const Realization& R;
  const OrientationClass& O;
  std::vector<int> c;  // per d-cell: orientation sign * geometric sign

  StepGeometry(const CellComplex& K_, const Realization& R_, const OrientationClass& O_)
      : K(K_), R(R_), O(O_) {
    c.resize(K.count(K.dim()));
    for (size_t t = 0; t < c.size(); ++t)
      c[t] = O.sign[t] * cell_geometric_sign(K, R, int(t));
  }

  // Unit normal of facet f pointing out of d-cell t, weighted by the
  // orientation sign c(t); irrational in general.
  VecD cooriented_normal(int f, int t) const {
    int d = K.dim();
    std::vector<VecQ> pts;
    for (int v : K.cell(d - 1, f).vertices) pts.push_back(R.coords[size_t(v)]);
    VecD n = to_vecd(generalized_cross(R.ambient, affine_basis(pts)));
    double nn = norm_d(n);
    if (nn == 0) throw ComplexError("degenerate facet normal");
    for (auto& x : n) x /= nn;
    VecD alt = to_vecd(altitude_vector(K, R, d, t, f));
    double side = vdot(n, alt);  // >0: n points into t
    double sgn = -double(c[size_t(t)]) * (side > 0 ? 1.0 : -1.0);
    for (auto& x : n) x *= sgn;
    return n;
  }

  VecD step(const StressAssignment& s, int f, int t) const {
    VecD n = cooriented_normal(f, t);
    double w = s.weighted[size_t(f)];
    for (auto& x : n) x *= w;
    return n;
  }

  // Exact step: density(f) * simplex cross normal / (d-1)!, cooriented the
  // same way; same length as the floating step.
  VecQ step_exact(const StressAssignment& s, int f, int t) const {
    int d = K.dim();
    std::vector<VecQ> pts;
    for (int v : K.cell(d - 1, f).vertices) pts.push_back(R.coords[size_t(v)]);
    std::vector<VecQ> edges;
    for (size_t i = 1; i < pts.size(); ++i) edges.push_back(vsub(pts[i], pts[0]));
    VecQ n = generalized_cross(R.ambient, edges);
    VecQ alt = altitude_vector(K, R, d, t, f);
    Rational side = vdot(n, alt);
    if (side == 0) throw ComplexError("degenerate facet normal");
    Rational fact = 1;
    for (int i = 2; i <= d - 1; ++i) fact *= i;
    Rational scale = (*s.density)[size_t(f)] / fact * (side > 0 ? -1 : 1) * c[size_t(t)];
    return vscale(scale, n);
  }
};

ReciprocalResult integrate(const StressAssignment& s, const CellComplex& K,
                           const Realization& R, const OrientationClass& O,
                           const std::vector<int>& cells, const std::vector<int>& facets,
                           int base_cell, const VecD* base_point) {
  ReciprocalResult out;
  Reciprocal& rec = out.rec;
  int d = K.dim();
  bool exact = R.mode == NumberMode::Exact && s.density.has_value() && K.simplicial();

  rec.cells = cells;
  rec.index_of.assign(K.count(d), -1);
  for (size_t i = 0; i < cells.size(); ++i) rec.index_of[size_t(cells[i])] = int(i);
  rec.base_cell = base_cell;

  StepGeometry geo(K, R, O);

  // dual adjacency restricted to the given facet set
  std::vector<std::vector<std::pair<int, int>>> adj(cells.size());  // (facet, nbr d-cell)
  for (int f : facets) {
    const auto& cf = K.cofaces(d - 1, f);
    if (cf.size() != 2) continue;
    int a = rec.index_of[size_t(cf[0])], b = rec.index_of[size_t(cf[1])];
    if (a < 0 || b < 0) continue;
    adj[size_t(a)].push_back({f, cf[1]});
    adj[size_t(b)].push_back({f, cf[0]});
  }

  VecD origin(size_t(R.ambient), 0.0);
  if (base_point) origin = *base_point;
  rec.points.assign(cells.size(), VecD(size_t(R.ambient), 0.0));
  std::optional<std::vector<VecQ>> pe;
  if (exact) pe = std::vector<VecQ>(cells.size(), VecQ(size_t(R.ambient), Rational(0)));

  std::vector<char> seen(cells.size(), 0);
  std::vector<int> parent_cell(cells.size(), -1), parent_facet(cells.size(), -1);
  int base_idx = rec.index_of[size_t(base_cell)];
  if (base_idx < 0) throw ComplexError("base cell not in reciprocal cell set");
  rec.points[size_t(base_idx)] = origin;
  seen[size_t(base_idx)] = 1;
  std::deque<int> queue{base_idx};
  std::vector<std::tuple<int, int, int>> cotree;  // (facet, from cell, to cell)

  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int t = cells[size_t(cur)];
    for (auto [f, nbr] : adj[size_t(cur)]) {
      int ni = rec.index_of[size_t(nbr)];
      if (seen[size_t(ni)]) {
        bool tree = (parent_cell[size_t(ni)] == cur && parent_facet[size_t(ni)] == f) ||
                    (parent_cell[size_t(cur)] == ni && parent_facet[size_t(cur)] == f);
        if (!tree && nbr > t) cotree.push_back({f, t, nbr});
        continue;
      }
      VecD step = geo.step(s, f, t);
      rec.points[size_t(ni)] = vadd(rec.points[size_t(cur)], step);
      if (pe) (*pe)[size_t(ni)] = vadd((*pe)[size_t(cur)], geo.step_exact(s, f, t));
      seen[size_t(ni)] = 1;
      parent_cell[size_t(ni)] = cur;
      parent_facet[size_t(ni)] = f;
      queue.push_back(ni);
    }
  }

  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    out.status = ReciprocalStatus::DisconnectedDualGraph;
    out.message = "dual graph is disconnected over the requested cell set";
    return out;
  }

  double scale = 1;
  for (int f : facets) scale = std::max(scale, std::abs(s.weighted[size_t(f)]));
  bool closed_ok = true;
  for (auto [f, t1, t2] : cotree) {
    int i1 = rec.index_of[size_t(t1)], i2 = rec.index_of[size_t(t2)];
    VecD gap = vsub(vadd(rec.points[size_t(i1)], geo.step(s, f, t1)),
                    rec.points[size_t(i2)]);
    double res = norm_d(gap) / scale;
    rec.max_closure_residual = std::max(rec.max_closure_residual, res);
    if (pe) {
      VecQ gq = vsub(vadd((*pe)[size_t(i1)], geo.step_exact(s, f, t1)),
                     (*pe)[size_t(i2)]);
      for (const auto& x : gq) closed_ok = closed_ok && x == 0;
    } else {
      closed_ok = closed_ok && res <= R.tol;
    }
  }
  if (!closed_ok) {
    out.status = ReciprocalStatus::ClosureFailure;
    out.message = "integration does not close over the dual cycle space";
    return out;
  }
  if (pe) {
    // prefer the exact points (the float pass is their shadow)
    for (size_t i = 0; i < rec.points.size(); ++i)
      rec.points[i] = vadd(origin, to_vecd((*pe)[i]));
    rec.points_exact = std::move(pe);
  }

  for (int f : facets) {
    const auto& cf = K.cofaces(d - 1, f);
    if (cf.size() != 2) continue;
    if (rec.index_of[size_t(cf[0])] < 0 || rec.index_of[size_t(cf[1])] < 0) continue;
    rec.edges.push_back({f, cf[0], cf[1], EdgeLabel::Degenerate});
  }
  classify_edges(rec, K, R, O, R.tol);
  return out;
}

}  // namespace

ReciprocalResult build_reciprocal(const StressAssignment& s, const CellComplex& K,
                                  const Realization& R, const OrientationClass& O,
                                  int base_cell, const VecD* base_point) {
  int d = K.dim();
  std::vector<int> cells(K.count(d));
  for (size_t i = 0; i < cells.size(); ++i) cells[i] = int(i);
  std::vector<int> facets;
  for (size_t f = 0; f < K.count(d - 1); ++f)
    if (K.cell(d - 1, int(f)).internal && K.cofaces(d - 1, int(f)).size() == 2)
      facets.push_back(int(f));
  return integrate(s, K, R, O, cells, facets, base_cell, base_point);
}

ReciprocalResult build_sub_reciprocal(const StressAssignment& s, const CellComplex& K,
                                      const Realization& R, const OrientationClass& O,
                                      CellRef center) {
  int d = K.dim();
  auto st = K.star(center.dim, center.index);
  std::vector<int> cells = st[size_t(d)];
  std::vector<int> facets;
  if (center.dim < d)
    for (int f : st[size_t(d - 1)])
      if (K.cell(d - 1, f).internal && K.cofaces(d - 1, f).size() == 2)
        facets.push_back(f);
  int base = *std::min_element(cells.begin(), cells.end());
  return integrate(s, K, R, O, cells, facets, base, nullptr);
}

void classify_edges(Reciprocal& rec, const CellComplex& K, const Realization& R,
                    const OrientationClass& O, double tol) {
  StepGeometry geo(K, R, O);
  double scale = 1;
  for (const auto& e : rec.edges) {
    VecD v = vsub(rec.point(e.to_cell), rec.point(e.from_cell));
    scale = std::max(scale, norm_d(v));
  }
  for (auto& e : rec.edges) {
    VecD v = vsub(rec.point(e.to_cell), rec.point(e.from_cell));
    double dot = vdot(v, geo.cooriented_normal(e.facet, e.from_cell));
    if (dot > tol * scale)
      e.label = EdgeLabel::Proper;
    else if (dot < -tol * scale)
      e.label = EdgeLabel::Improper;
    else
      e.label = EdgeLabel::Degenerate;
  }
}

namespace {

template <class S>
S from_rational(const Rational& q);
template <>
double from_rational<double>(const Rational& q) { return to_double(q); }
template <>
Rational from_rational<Rational>(const Rational& q) { return q; }

// Generic over the coefficient field; pulls reciprocal points from `pts`.
template <class S>
MultiVector<S> sub_reciprocal_mv_impl(const Reciprocal& rec,
                                      const std::vector<std::vector<S>>& pts,
                                      const CellComplex& K, const OrientationClass& O,
                                      CellRef C, const std::vector<S>& p,
                                      const VirtualBarycenters* vb) {
  int d = K.dim();
  int m = d - C.dim;
  int n = int(p.size());
  MultiVector<S> V(n);
  if (m == 0) {
    V.c[0] = S(1);
    return V;
  }

  auto vbc = [&](const CellRef& E) -> std::vector<S> {
    if (vb) {
      auto it = vb->weights.find({E.dim, E.index});
      if (it != vb->weights.end()) {
        std::vector<S> acc(size_t(n), S(0));
        for (const auto& [t, w] : it->second)
          acc = vadd(acc, vscale(from_rational<S>(w), pts[size_t(rec.index_of[size_t(t)])]));
        return acc;
      }
    }
    std::vector<int> tops =
        E.dim == d ? std::vector<int>{E.index} : K.star(E.dim, E.index)[size_t(d)];
    std::vector<S> acc(size_t(n), S(0));
    for (int t : tops) acc = vadd(acc, pts[size_t(rec.index_of[size_t(t)])]);
    return vscale(S(1) / S(int(tops.size())), acc);
  };

  // Each dimension step in the ascending flag crosses the dual cell against
  // its coorientation, contributing one sign flip; the (-1)^m parity keeps
  // the m = 0 convention (volume 1) consistent with the m = 1 case, where an
  // all-positive stress must yield positive dual volumes.
  int parity = (m % 2 != 0) ? -1 : 1;
  for (const auto& chain : ascending_flags(K, C.dim, C.index)) {
    int sgn = parity * O.sign[size_t(chain.back().index)] * flag_incidence_product(K, chain);
    std::vector<std::vector<S>> vecs;
    for (size_t j = 1; j < chain.size(); ++j) vecs.push_back(vsub(vbc(chain[j]), p));
    MultiVector<S> w = wedge_all(n, vecs);
    V += w * S(sgn);
  }
  S fact{1};
  for (int i = 2; i <= m; ++i) fact *= S(i);
  for (auto& x : V.c) x /= fact;
  return V;
}

}  // namespace

MultiVector<double> sub_reciprocal_mv(const Reciprocal& rec, const CellComplex& K,
                                      const OrientationClass& O, CellRef C,
                                      const VecD& p, const VirtualBarycenters* vb) {
  return sub_reciprocal_mv_impl<double>(rec, rec.points, K, O, C, p, vb);
}

MultiVector<Rational> sub_reciprocal_mv_exact(const Reciprocal& rec, const CellComplex& K,
                                              const OrientationClass& O, CellRef C,
                                              const VecQ& p, const VirtualBarycenters* vb) {
  if (!rec.points_exact)
    throw ComplexError("exact sub-reciprocal volume needs exact reciprocal points");
  return sub_reciprocal_mv_impl<Rational>(rec, *rec.points_exact, K, O, C, p, vb);
}

int orientation_reference(const CellComplex& K, const Realization& R,
                          const OrientationClass& O) {
  return O.sign[0] * cell_geometric_sign(K, R, 0);
}

double reciprocal_volume(const Reciprocal& rec, const CellComplex& K,
                         const Realization& R, const OrientationClass& O, CellRef C,
                         const std::vector<CellRef>& flag, const VirtualBarycenters* vb,
                         const VecD* base_point) {
  int d = K.dim();
  if (C.dim == d) return 1.0;
  if (flag.empty() || flag.back() != C)
    throw ComplexError("orientation flag must end at the cell");

  VecD p(size_t(R.ambient), 0.0);
  if (base_point) p = *base_point;
  MultiVector<double> V = sub_reciprocal_mv(rec, K, O, C, p, vb);

  // Orientation of the perpendicular plane: Hodge dual of the flag's
  // altitude frame spanning lin(C), weighted by the flag incidences.
  MultiVector<double> A = MultiVector<double>::scalar_one(R.ambient);
  for (size_t j = 1; j < flag.size(); ++j)
    A = wedge(A, to_vecd(altitude_vector(K, R, flag[j].dim, flag[j].index,
                                         flag[j - 1].index)));
  int pi = flag_incidence_product(K, flag);
  double an = std::sqrt(mv_dot(A, A));
  if (an == 0) throw ComplexError("degenerate orientation flag");
  return orientation_reference(K, R, O) * pi * mv_dot(V, hodge_star(A)) / an;
}

}  // namespace stresskit
