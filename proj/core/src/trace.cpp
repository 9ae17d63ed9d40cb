#include "stresskit/trace.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace stresskit {

StressAssignment scale_stress(const StressAssignment& s, const Rational& t) {
  StressAssignment r = s;
  double td = to_double(t);
  for (auto& w : r.weighted) w *= td;
  if (r.density)
    for (auto& x : *r.density) x *= t;
  return r;
}

StressAssignment axpy_stress(const StressAssignment& a, double t,
                             const StressAssignment& b) {
  StressAssignment r;
  r.level = a.level;
  r.weighted = a.weighted;
  for (size_t i = 0; i < r.weighted.size(); ++i) r.weighted[i] += t * b.weighted[i];
  return r;  // density is not propagated: this is a floating-point operation
}

namespace {

MultiVector<Rational> altitude_frame_mv(const CellComplex& K, const Realization& R,
                                        const std::vector<CellRef>& flag) {
  MultiVector<Rational> A = MultiVector<Rational>::scalar_one(R.ambient);
  for (size_t j = 1; j < flag.size(); ++j)
    A = wedge(A, altitude_vector(K, R, flag[j].dim, flag[j].index, flag[j - 1].index));
  return A;
}

// Canonical (k-1)-vector of the simplicial cell: wedge of edge vectors from
// the smallest vertex, in sorted vertex order.
MultiVector<Rational> simplex_mv(const CellComplex& K, const Realization& R, int k,
                                 int ci) {
  const auto& vs = K.cell(k, ci).vertices;
  std::vector<VecQ> edges;
  for (size_t i = 1; i < vs.size(); ++i)
    edges.push_back(vsub(R.coords[size_t(vs[i])], R.coords[size_t(vs[0])]));
  return wedge_all(R.ambient, edges);
}

}  // namespace

TraceResult trace(const StressAssignment& s, const CellComplex& K, const Realization& R,
                  const OrientationClass& O, int k, const TraceOptions& opt) {
  int d = K.dim();
  if (k < 1 || k > d) throw ComplexError("trace level out of range");
  if (s.level != d) throw ComplexError("trace input must be a top-level stress");

  TraceResult out;
  out.level = k;
  out.stress.level = k;
  out.stress.weighted.assign(K.count(k - 1), 0.0);
  bool exact = R.mode == NumberMode::Exact && s.density.has_value() && K.simplicial();
  std::optional<VecQ> dens;
  if (exact) dens = VecQ(K.count(k - 1), Rational(0));

  VecD p(size_t(R.ambient), 0.0);
  if (opt.base_point) p = *opt.base_point;
  VecQ pq(size_t(R.ambient), Rational(0));
  for (size_t i = 0; i < p.size(); ++i) pq[i] = Rational(p[i]);

  int ref = orientation_reference(K, R, O);
  Rational fact = 1;
  for (int i = 2; i <= k - 1; ++i) fact *= i;
  std::mt19937_64 rng(opt.seed);

  for (size_t ci = 0; ci < K.count(k - 1); ++ci) {
    const Cell& C = K.cell(k - 1, int(ci));
    if (!C.internal || C.pinned) continue;
    CellRef cref{k - 1, int(ci)};

    auto rr = build_sub_reciprocal(s, K, R, O, cref);
    if (rr.status != ReciprocalStatus::Ok)
      throw ComplexError("sub-reciprocal failed: " + rr.message);

    std::vector<CellRef> flag;
    if (opt.randomize_flags) {
      auto all = descending_flags(K, k - 1, int(ci));
      flag = all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
    } else {
      flag = canonical_descending_flag(K, k - 1, int(ci));
    }

    if (exact) {
      MultiVector<Rational> V = sub_reciprocal_mv_exact(rr.rec, K, O, cref, pq, opt.vb);
      MultiVector<Rational> A = altitude_frame_mv(K, R, flag);
      MultiVector<Rational> N = simplex_mv(K, R, k - 1, int(ci));
      Rational nn = mv_dot(N, N);
      Rational lambda = mv_dot(A, N);
      if (lambda == 0) throw ComplexError("degenerate orientation flag");
      int pi = flag_incidence_product(K, flag);
      Rational rho = Rational(ref * pi * (lambda > 0 ? 1 : -1)) * fact *
                     mv_dot(V, hodge_star(N)) / nn;
      (*dens)[ci] = rho;
    } else {
      out.stress.weighted[ci] =
          reciprocal_volume(rr.rec, K, R, O, cref, flag, opt.vb, &p);
    }
  }

  if (exact) {
    out.stress.weighted = densities_to_weighted(K, R, k, *dens);
    out.stress.density = std::move(dens);
  }
  out.residuals = verify_stress(out.stress, K, R);
  return out;
}

HomogeneityReport homogeneity_check(const StressAssignment& s, const CellComplex& K,
                                    const Realization& R, const OrientationClass& O,
                                    int k, const Rational& t) {
  HomogeneityReport rep;
  rep.degree = K.dim() - k + 1;
  TraceResult base = trace(s, K, R, O, k);
  TraceResult scaled = trace(scale_stress(s, t), K, R, O, k);
  double factor = std::pow(to_double(t), rep.degree);
  double scale = 0;
  for (double w : base.stress.weighted) scale = std::max(scale, std::abs(factor * w));
  if (scale == 0) scale = 1;
  for (size_t i = 0; i < base.stress.weighted.size(); ++i) {
    double dev = std::abs(scaled.stress.weighted[i] - factor * base.stress.weighted[i]);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev / scale);
  }
  return rep;
}

TensionReport tension_positivity(const StressAssignment& s, const CellComplex& K,
                                 const Realization& R, const OrientationClass& O, int k,
                                 std::optional<int> outer_cell) {
  TensionReport rep;
  int d = K.dim();
  TraceResult t = trace(s, K, R, O, k);

  std::vector<char> boundary(K.count(k - 1), 0);
  if (K.closed()) {
    int outer = outer_cell.value_or(-1);
    if (outer < 0) {
      double best = -1;
      for (size_t i = 0; i < K.count(d); ++i) {
        double v = cell_volume(K, R, d, int(i));
        if (v > best) { best = v; outer = int(i); }
      }
    }
    rep.outer_cell = outer;
    for (int f : K.faces(d, outer, k - 1)) boundary[size_t(f)] = 1;
  } else {
    for (size_t i = 0; i < K.count(k - 1); ++i)
      boundary[i] = !K.cell(k - 1, int(i)).internal;
  }

  rep.interior_all_positive = true;
  for (size_t i = 0; i < K.count(k - 1); ++i) {
    const Cell& c = K.cell(k - 1, int(i));
    if (c.pinned || !c.internal) continue;
    double w = t.stress.weighted[i];
    if (boundary[i]) {
      (w > 0 ? rep.boundary_positive : rep.boundary_negative).push_back(int(i));
      if (int(K.star(k - 1, int(i))[size_t(d)].size()) != d)
        rep.hypothesis_violations.push_back(int(i));
    } else if (!(w > 0)) {
      rep.interior_all_positive = false;
      rep.nonpositive_interior.push_back(int(i));
    }
  }
  return rep;
}

JacobianReport jacobian_rank(const CellComplex& K, const Realization& R,
                             const OrientationClass& O, int k,
                             const StressAssignment& s, double h) {
  JacobianReport rep;
  int d = K.dim();
  StressBasis bd = stress_basis(K, R, d);
  StressBasis bk = stress_basis(K, R, k);
  rep.max_possible = int(std::min(bd.basis.size(), bk.basis.size()));
  size_t nb = bd.basis.size();
  size_t nc = K.count(k - 1);
  if (nb == 0) return rep;

  double snorm = norm_d(s.weighted);
  if (h <= 0) h = 1e-5 * std::max(snorm, 1.0);
  rep.step_used = h;

  auto column = [&](size_t j, double step) {
    TraceResult tp = trace(axpy_stress(s, step, bd.basis[j]), K, R, O, k);
    TraceResult tm = trace(axpy_stress(s, -step, bd.basis[j]), K, R, O, k);
    VecD col(nc);
    for (size_t i = 0; i < nc; ++i)
      col[i] = (tp.stress.weighted[i] - tm.stress.weighted[i]) / (2 * step);
    return col;
  };

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(long(nc), long(nb));
  double max_entry = 0, max_dev = 0;
  for (size_t j = 0; j < nb; ++j) {
    VecD c1 = column(j, h), c2 = column(j, 2 * h);
    for (size_t i = 0; i < nc; ++i) {
      J(long(i), long(j)) = c1[i];
      max_entry = std::max(max_entry, std::abs(c1[i]));
      max_dev = std::max(max_dev, std::abs(c1[i] - c2[i]));
    }
  }
  // Degree <= d-k+1 <= 3 here, so the h and 2h central differences agree up
  // to the quadratic correction; gross disagreement flags a bad step.
  rep.step_ok = max_dev <= 1e-3 * std::max(max_entry, 1e-12) ||
                max_entry <= 1e-12;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  for (long i = 0; i < sv.size(); ++i) rep.singular_values.push_back(sv(i));
  double thresh = sv.size() ? 1e-6 * sv(0) : 0;
  int r = 0;
  while (r < sv.size() && sv(r) > thresh) ++r;
  rep.rank = r;
  if (r > 0 && r < sv.size() && sv(r) > 0)
    rep.gap = sv(r - 1) / sv(r);
  else
    rep.gap = std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace stresskit
