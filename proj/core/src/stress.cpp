#include "stresskit/stress.hpp"

#include <Eigen/SVD>

namespace stresskit {

namespace {

std::vector<int> carrier_cells(const CellComplex& K, int level) {
  std::vector<int> out;
  for (size_t i = 0; i < K.count(level - 1); ++i)
    if (!K.cell(level - 1, int(i)).pinned) out.push_back(int(i));
  return out;
}

std::vector<int> constraint_cells(const CellComplex& K, int level) {
  std::vector<int> out;
  if (level - 2 < 0) return out;
  for (size_t i = 0; i < K.count(level - 2); ++i) {
    const Cell& c = K.cell(level - 2, int(i));
    if (c.internal && !c.pinned) out.push_back(int(i));
  }
  return out;
}

}  // namespace

AssembledMatrix assemble(const CellComplex& K, const Realization& R, int level) {
  AssembledMatrix out;
  out.level = level;
  out.carriers = carrier_cells(K, level);
  out.constraints = constraint_cells(K, level);
  int d = R.ambient;
  out.M = Eigen::MatrixXd::Zero(long(out.carriers.size()),
                                long(out.constraints.size()) * d);
  for (size_t ci = 0; ci < out.carriers.size(); ++ci) {
    int cell = out.carriers[ci];
    for (size_t fi = 0; fi < out.constraints.size(); ++fi) {
      int f = out.constraints[fi];
      if (K.incidence(level - 1, cell, f) == 0) continue;
      VecD n = inner_unit_normal(K, R, level - 1, cell, f);
      for (int t = 0; t < d; ++t) out.M(long(ci), long(fi) * d + t) = n[size_t(t)];
    }
  }
  return out;
}

AssembledMatrixExact assemble_exact(const CellComplex& K, const Realization& R,
                                    int level) {
  if (!K.simplicial())
    throw ComplexError("exact stress assembly requires a simplicial complex");
  AssembledMatrixExact out;
  out.level = level;
  out.carriers = carrier_cells(K, level);
  out.constraints = constraint_cells(K, level);
  int d = R.ambient;
  out.M = QMatrix(out.carriers.size(), out.constraints.size() * size_t(d));
  for (size_t ci = 0; ci < out.carriers.size(); ++ci) {
    int cell = out.carriers[ci];
    for (size_t fi = 0; fi < out.constraints.size(); ++fi) {
      int f = out.constraints[fi];
      if (K.incidence(level - 1, cell, f) == 0) continue;
      VecQ a = altitude_vector(K, R, level - 1, cell, f);
      for (int t = 0; t < d; ++t) out.M(ci, fi * size_t(d) + size_t(t)) = a[size_t(t)];
    }
  }
  return out;
}

VecD densities_to_weighted(const CellComplex& K, const Realization& R, int level,
                           const VecQ& density) {
  VecD w(K.count(level - 1), 0.0);
  for (size_t i = 0; i < w.size(); ++i)
    if (density[i] != 0)
      w[i] = to_double(density[i]) * cell_volume(K, R, level - 1, int(i));
  return w;
}

StressBasis stress_basis(const CellComplex& K, const Realization& R, int level) {
  StressBasis out;
  out.level = level;
  size_t ncells = K.count(level - 1);

  if (R.mode == NumberMode::Exact) {
    auto am = assemble_exact(K, R, level);
    std::vector<VecQ> ker = left_kernel_basis(am.M);
    for (const auto& kv : ker) {
      StressAssignment s;
      s.level = level;
      VecQ dens(ncells, Rational(0));
      for (size_t c = 0; c < am.carriers.size(); ++c) dens[size_t(am.carriers[c])] = kv[c];
      s.weighted = densities_to_weighted(K, R, level, dens);
      s.density = std::move(dens);
      out.basis.push_back(std::move(s));
    }
    return out;
  }

  auto am = assemble(K, R, level);
  long rows = am.M.rows(), cols = am.M.cols();
  if (cols == 0 || rows == 0) {
    // no equilibrium constraints: every carrier assignment is a stress
    for (int c : am.carriers) {
      StressAssignment s;
      s.level = level;
      s.weighted.assign(ncells, 0.0);
      s.weighted[size_t(c)] = 1.0;
      out.basis.push_back(std::move(s));
    }
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(am.M.transpose(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  double thresh = 1e-8 * smax;
  long r = 0;
  while (r < sv.size() && sv(r) > thresh) ++r;
  if (r > 0 && r < sv.size() && sv(r) > 0)
    out.spectral_gap = sv(r - 1) / sv(r);
  else if (r > 0)
    out.spectral_gap = std::numeric_limits<double>::infinity();
  out.ambiguous = out.spectral_gap < 10.0 && r < sv.size();
  // kernel of M^T = columns of V from r to end
  for (long kcol = r; kcol < svd.matrixV().cols(); ++kcol) {
    StressAssignment s;
    s.level = level;
    s.weighted.assign(ncells, 0.0);
    for (size_t c = 0; c < am.carriers.size(); ++c)
      s.weighted[size_t(am.carriers[c])] = svd.matrixV()(long(c), kcol);
    out.basis.push_back(std::move(s));
  }
  return out;
}

VerifyReport verify_stress(const StressAssignment& s, const CellComplex& K,
                           const Realization& R) {
  VerifyReport rep;
  int level = s.level;
  int d = R.ambient;
  auto constraints = constraint_cells(K, level);
  double scale = 0;
  for (double w : s.weighted) scale += std::abs(w);
  if (scale == 0) scale = 1;

  bool exact_ok = s.density.has_value() && K.simplicial();
  for (int f : constraints) {
    VecD acc(size_t(d), 0.0);
    VecQ acc_q(size_t(d), Rational(0));
    for (int c : K.cofaces(level - 2, f)) {
      if (K.cell(level - 1, c).pinned) continue;
      double w = s.weighted[size_t(c)];
      if (w != 0) {
        VecD n = inner_unit_normal(K, R, level - 1, c, f);
        for (int t = 0; t < d; ++t) acc[size_t(t)] += w * n[size_t(t)];
      }
      if (exact_ok && (*s.density)[size_t(c)] != 0) {
        VecQ a = altitude_vector(K, R, level - 1, c, f);
        acc_q = vadd(acc_q, vscale((*s.density)[size_t(c)], a));
      }
    }
    double res = norm_d(acc) / scale;
    rep.per_constraint.push_back(res);
    rep.max_relative_residual = std::max(rep.max_relative_residual, res);
    if (exact_ok)
      for (const auto& x : acc_q) exact_ok = exact_ok && x == 0;
  }
  rep.exact_zero = s.density.has_value() && K.simplicial() && exact_ok;
  return rep;
}

RigidityReport is_statically_rigid(const CellComplex& K, const Realization& R) {
  RigidityReport rep;
  int d = R.ambient;
  size_t nv = K.count(0);
  rep.load_dim = size_t(d) * nv - size_t(d * (d + 1) / 2);
  rep.formula_applicable = affine_rank(R.coords) == d;

  Eigen::MatrixXd M(long(K.count(1)), long(nv) * d);
  M.setZero();
  for (size_t e = 0; e < K.count(1); ++e) {
    const Cell& edge = K.cell(1, int(e));
    for (size_t t = 0; t < edge.facets.size(); ++t) {
      int v = edge.facets[t];
      VecD n = inner_unit_normal(K, R, 1, int(e), v);
      for (int q = 0; q < d; ++q) M(long(e), long(v) * d + q) = n[size_t(q)];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  double thresh = sv.size() ? 1e-8 * sv(0) : 0.0;
  size_t r = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  rep.rank = r;
  rep.rigid = rep.formula_applicable && r == rep.load_dim;
  return rep;
}

}  // namespace stresskit
