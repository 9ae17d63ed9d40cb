#include "stresskit/realization.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace stresskit {

double norm_d(const VecD& v) {
  double acc = 0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

std::vector<VecQ> affine_basis(const std::vector<VecQ>& points) {
  std::vector<VecQ> basis;
  if (points.empty()) return basis;
  size_t n = points[0].size();
  QMatrix m(0, n);
  std::vector<VecQ> candidates;
  for (size_t i = 1; i < points.size(); ++i) candidates.push_back(vsub(points[i], points[0]));
  for (const auto& v : candidates) {
    QMatrix trial(basis.size() + 1, n);
    for (size_t r = 0; r < basis.size(); ++r)
      for (size_t c = 0; c < n; ++c) trial(r, c) = basis[r][c];
    for (size_t c = 0; c < n; ++c) trial(basis.size(), c) = v[c];
    if (rank(trial) == basis.size() + 1) basis.push_back(v);
  }
  return basis;
}

int affine_rank(const std::vector<VecQ>& points) {
  return int(affine_basis(points).size());
}

VecQ project_onto_span(const std::vector<VecQ>& basis, const VecQ& v) {
  size_t n = v.size();
  if (basis.empty()) return VecQ(n, Rational(0));
  size_t m = basis.size();
  QMatrix gram(m, m);
  VecQ rhs(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) gram(i, j) = vdot(basis[i], basis[j]);
    rhs[i] = vdot(basis[i], v);
  }
  auto x = solve(gram, rhs);
  if (!x) throw ComplexError("degenerate basis in projection");
  VecQ p(n, Rational(0));
  for (size_t i = 0; i < m; ++i) p = vadd(p, vscale((*x)[i], basis[i]));
  return p;
}

FlatnessReport validate_flatness(const CellComplex& K, const Realization& R) {
  FlatnessReport rep;
  for (int k = 1; k <= K.dim(); ++k) {
    for (size_t i = 0; i < K.count(k); ++i) {
      std::vector<VecQ> pts;
      for (int v : K.cell(k, int(i)).vertices) pts.push_back(R.coords[size_t(v)]);
      int r = affine_rank(pts);
      if (r != k) {
        rep.ok = false;
        rep.offenders.push_back({{k, int(i)}, r});
      }
    }
  }
  return rep;
}

VecQ barycenter(const CellComplex& K, const Realization& R, int k, int i) {
  const auto& vs = K.cell(k, i).vertices;
  VecQ acc(R.ambient, Rational(0));
  for (int v : vs) acc = vadd(acc, R.coords[size_t(v)]);
  return vscale(Rational(1, (unsigned)vs.size()), acc);
}

VecQ altitude_vector(const CellComplex& K, const Realization& R, int k, int ci, int fi) {
  const Cell& C = K.cell(k, ci);
  const auto& fverts = k >= 1 ? K.cell(k - 1, fi).vertices : std::vector<int>{};
  std::vector<VecQ> fpts;
  for (int v : fverts) fpts.push_back(R.coords[size_t(v)]);

  VecQ tip;
  if (K.simplicial() && int(C.vertices.size()) == k + 1) {
    // opposite vertex
    int opp = -1;
    for (int v : C.vertices)
      if (!std::binary_search(fverts.begin(), fverts.end(), v)) opp = v;
    if (opp < 0) throw ComplexError("facet not a face of cell");
    tip = R.coords[size_t(opp)];
  } else {
    tip = barycenter(K, R, k, ci);
  }
  VecQ rel = vsub(tip, fpts[0]);

  // component of rel orthogonal to lin(F), inside lin(C)
  auto fbasis = affine_basis(fpts);
  VecQ along = project_onto_span(fbasis, rel);
  VecQ alt = vsub(rel, along);
  bool zero = true;
  for (const auto& x : alt) zero = zero && x == 0;
  if (zero) throw ComplexError("degenerate cell: zero altitude");
  return alt;
}

VecD inner_unit_normal(const CellComplex& K, const Realization& R, int k, int ci, int fi) {
  VecD a = to_vecd(altitude_vector(K, R, k, ci, fi));
  double n = norm_d(a);
  for (auto& x : a) x /= n;
  return a;
}

namespace {

// Orthonormal frame (double) spanning the same space as the rational basis.
std::vector<VecD> orthonormal_frame(const std::vector<VecQ>& basis) {
  std::vector<VecD> frame;
  for (const auto& bq : basis) {
    VecD v = to_vecd(bq);
    for (const auto& f : frame) {
      double d = 0;
      for (size_t i = 0; i < v.size(); ++i) d += v[i] * f[i];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= d * f[i];
    }
    double n = norm_d(v);
    if (n < 1e-300) continue;
    for (auto& x : v) x /= n;
    frame.push_back(v);
  }
  return frame;
}

double det_dense(std::vector<VecD> rows) {
  int n = int(rows.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[size_t(i)][size_t(j)];
  return m.determinant();
}

}  // namespace

double slab_volume(const OrientedCycleD& cycle, const VecD& p) {
  int d = cycle.ambient;
  double acc = 0;
  for (const auto& s : cycle.simplices) {
    // unit normal to aff(F)
    std::vector<VecD> edges;
    for (size_t i = 1; i < s.verts.size(); ++i) edges.push_back(vsub(s.verts[i], s.verts[0]));
    VecD nrm = generalized_cross(d, edges);
    double nn = norm_d(nrm);
    if (nn == 0) continue;
    for (auto& x : nrm) x /= nn;
    double dist = std::abs(vdot(vsub(s.verts[0], p), nrm));

    // orthonormal frame E in aff(F) such that [v1 - p, E] is positively
    // oriented in R^d; signed (d-1)-volume of F in that frame.
    std::vector<VecQ> qedges;  // reuse Gram-Schmidt over doubles
    std::vector<VecD> frame;
    {
      std::vector<VecD> dedges = edges;
      for (auto& v : dedges) {
        for (const auto& f : frame) {
          double dd = vdot(v, f);
          for (size_t i = 0; i < v.size(); ++i) v[i] -= dd * f[i];
        }
        double n2 = norm_d(v);
        if (n2 < 1e-300) continue;
        for (auto& x : v) x /= n2;
        frame.push_back(v);
      }
    }
    if (int(frame.size()) != d - 1) continue;
    std::vector<VecD> check;
    check.push_back(vsub(s.verts[0], p));
    for (const auto& f : frame) check.push_back(f);
    if (det_dense(check) < 0) {
      // flip one frame vector to flip the induced orientation
      for (auto& x : frame[0]) x = -x;
    }
    std::vector<VecD> coords;
    for (const auto& e : edges) {
      VecD c(frame.size());
      for (size_t i = 0; i < frame.size(); ++i) c[i] = vdot(e, frame[i]);
      coords.push_back(c);
    }
    double fact = 1;
    for (int i = 2; i <= d - 1; ++i) fact *= i;
    double face_vol = det_dense(coords) / fact;
    acc += (s.sign > 0 ? 1.0 : -1.0) * dist * face_vol;
  }
  return acc / d;
}

FlagFrame flag_frame_sign(const CellComplex& K, const Realization& R,
                          const std::vector<CellRef>& flag, const OrientationClass& O) {
  if (flag.empty() || flag.back().dim != K.dim())
    throw ComplexError("flag must end at a top cell");
  FlagFrame out;
  for (size_t t = 1; t < flag.size(); ++t)
    out.normals.push_back(
        altitude_vector(K, R, flag[t].dim, flag[t].index, flag[t - 1].index));
  if (int(out.normals.size()) != R.ambient)
    throw ComplexError("flag_frame_sign needs a full flag from a vertex");
  QMatrix m(out.normals.size(), out.normals.size());
  for (size_t i = 0; i < out.normals.size(); ++i)
    for (size_t j = 0; j < out.normals[i].size(); ++j) m(i, j) = out.normals[i][j];
  Rational det = determinant(m);
  int geo = det > 0 ? 1 : det < 0 ? -1 : 0;
  if (geo == 0) throw ComplexError("degenerate flag geometry");
  out.sign = O.sign[size_t(flag.back().index)] * geo;
  return out;
}

int cell_geometric_sign(const CellComplex& K, const Realization& R, int i) {
  auto flag = canonical_descending_flag(K, K.dim(), i);
  std::vector<VecQ> alts;
  for (size_t t = 1; t < flag.size(); ++t)
    alts.push_back(altitude_vector(K, R, flag[t].dim, flag[t].index, flag[t - 1].index));
  QMatrix m(alts.size(), alts.size());
  for (size_t a = 0; a < alts.size(); ++a)
    for (size_t b = 0; b < alts[a].size(); ++b) m(a, b) = alts[a][b];
  Rational det = determinant(m);
  int geo = det > 0 ? 1 : det < 0 ? -1 : 0;
  if (geo == 0) throw ComplexError("degenerate top cell");
  return geo * flag_incidence_product(K, flag);
}

double cell_volume(const CellComplex& K, const Realization& R, int k, int ci) {
  if (k == 0) return 1.0;
  std::vector<VecQ> pts;
  for (int v : K.cell(k, ci).vertices) pts.push_back(R.coords[size_t(v)]);
  auto frame = orthonormal_frame(affine_basis(pts));
  if (int(frame.size()) != k) throw ComplexError("degenerate cell in cell_volume");

  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;

  if (K.simplicial()) {
    std::vector<VecD> coords;
    for (size_t i = 1; i < pts.size(); ++i) {
      VecD e = to_vecd(vsub(pts[i], pts[0]));
      VecD c(frame.size());
      for (size_t t = 0; t < frame.size(); ++t) c[t] = vdot(e, frame[t]);
      coords.push_back(c);
    }
    return std::abs(det_dense(coords)) / fact;
  }

  // barycentric decomposition for general flat cells
  VecD origin = to_vecd(barycenter(K, R, k, ci));
  double acc = 0;
  for (const auto& flag : descending_flags(K, k, ci)) {
    std::vector<VecD> rows;
    VecD prev;
    std::vector<VecD> bcs;
    for (const auto& cr : flag) bcs.push_back(to_vecd(barycenter(K, R, cr.dim, cr.index)));
    for (size_t t = 0; t + 1 < bcs.size(); ++t) {
      VecD e = vsub(bcs[t], bcs.back());
      VecD c(frame.size());
      for (size_t u = 0; u < frame.size(); ++u) c[u] = vdot(e, frame[u]);
      rows.push_back(c);
    }
    (void)origin;
    acc += flag_incidence_product(K, flag) * det_dense(rows);
  }
  return std::abs(acc) / fact;
}

}  // namespace stresskit
