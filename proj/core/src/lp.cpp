#include "stresskit/lp.hpp"

#include <algorithm>

namespace stresskit {

namespace {

// Dense tableau for the two-phase simplex. Column layout: the n structural
// columns, then m artificial columns, then the right-hand side.
struct Tableau {
  size_t m = 0, n = 0;
  QMatrix T;                // m rows x (n + m + 1) columns
  VecQ obj;                 // reduced-cost row, length n + m
  Rational obj_rhs = 0;     // negated objective value
  std::vector<size_t> basis;

  size_t width() const { return n + m; }
  Rational& rhs(size_t i) { return T(i, width()); }

  void pivot(size_t r, size_t c) {
    Rational piv = T(r, c);
    for (size_t j = 0; j <= width(); ++j) T(r, j) /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || T(i, c) == 0) continue;
      Rational f = T(i, c);
      for (size_t j = 0; j <= width(); ++j) T(i, j) -= f * T(r, j);
    }
    if (obj[c] != 0) {
      Rational f = obj[c];
      for (size_t j = 0; j < width(); ++j) obj[j] -= f * T(r, j);
      obj_rhs -= f * rhs(r);
    }
    basis[r] = c;
  }

  // Bland's rule: smallest-index entering column with negative reduced cost,
  // smallest-basis-index leaving row on ties. Returns false when optimal,
  // throws-by-flag (unbounded=true) when no leaving row exists.
  bool step(const std::vector<bool>& allowed, bool& unbounded) {
    size_t enter = width();
    for (size_t j = 0; j < width(); ++j)
      if (allowed[j] && obj[j] < 0) { enter = j; break; }
    if (enter == width()) return false;
    size_t leave = m;
    Rational best = 0;
    for (size_t i = 0; i < m; ++i) {
      if (T(i, enter) <= 0) continue;
      Rational ratio = rhs(i) / T(i, enter);
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) { unbounded = true; return false; }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LPSolution solve_lp(const StandardLP& lp) {
  size_t m = lp.A.rows, n = lp.A.cols;
  LPSolution out;

  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.T = QMatrix(m, n + m + 1);
  tb.basis.resize(m);
  std::vector<int> row_sign(m, 1);
  for (size_t i = 0; i < m; ++i) {
    if (lp.b[i] < 0) row_sign[i] = -1;
    for (size_t j = 0; j < n; ++j) tb.T(i, j) = row_sign[i] * lp.A(i, j);
    tb.T(i, n + i) = 1;
    tb.rhs(i) = row_sign[i] * lp.b[i];
    tb.basis[i] = n + i;
  }

  // Phase 1: minimize the artificial sum; reduced costs priced out against
  // the all-artificial starting basis.
  tb.obj.assign(n + m, Rational(0));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < m; ++i) tb.obj[j] -= tb.T(i, j);
  for (size_t i = 0; i < m; ++i) tb.obj_rhs -= tb.rhs(i);

  std::vector<bool> allowed(n + m, true);
  bool unbounded = false;
  while (tb.step(allowed, unbounded)) {}

  Rational phase1 = -tb.obj_rhs;
  if (phase1 > 0) {
    out.status = LPStatus::Infeasible;
    // y_i = 1 - (final reduced cost of artificial i), undone for row flips
    out.farkas_y.resize(m);
    for (size_t i = 0; i < m; ++i)
      out.farkas_y[i] = row_sign[i] * (Rational(1) - tb.obj[n + i]);
    return out;
  }

  // Drive leftover artificials out of the basis (or neutralize their rows).
  for (size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    size_t c = n;
    for (size_t j = 0; j < n; ++j)
      if (tb.T(i, j) != 0) { c = j; break; }
    if (c < n) tb.pivot(i, c);
  }
  for (size_t j = n; j < n + m; ++j) allowed[j] = false;

  // Phase 2 objective, priced out against the current basis.
  tb.obj.assign(n + m, Rational(0));
  tb.obj_rhs = 0;
  for (size_t j = 0; j < n; ++j) tb.obj[j] = lp.c[j];
  for (size_t i = 0; i < m; ++i) {
    if (tb.basis[i] >= n || lp.c[tb.basis[i]] == 0) continue;
    Rational f = lp.c[tb.basis[i]];
    for (size_t j = 0; j < n + m; ++j) tb.obj[j] -= f * tb.T(i, j);
    tb.obj_rhs -= f * tb.rhs(i);
  }
  while (tb.step(allowed, unbounded)) {}
  if (unbounded) {
    out.status = LPStatus::Unbounded;
    return out;
  }

  out.status = LPStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) out.x[tb.basis[i]] = tb.rhs(i);
  out.value = 0;
  for (size_t j = 0; j < n; ++j) out.value += lp.c[j] * out.x[j];
  return out;
}

namespace {

// Interior stress carriers: the cells where positivity is demanded.
std::vector<int> interior_carriers(const CellComplex& K, int level) {
  std::vector<int> out;
  for (size_t i = 0; i < K.count(level - 1); ++i) {
    const Cell& c = K.cell(level - 1, int(i));
    if (c.internal && !c.pinned) out.push_back(int(i));
  }
  return out;
}

}  // namespace

PositiveStressResult find_positive_stress(const CellComplex& K, const Realization& R,
                                          int level) {
  PositiveStressResult out;
  auto rows = interior_carriers(K, level);
  StressBasis sb = stress_basis(K, R, level);
  size_t m = rows.size(), r = sb.basis.size();

  if (m == 0) {
    out.status = PositiveStressStatus::Found;
    out.stress.level = level;
    out.stress.weighted.assign(K.count(level - 1), 0.0);
    return out;
  }
  if (r == 0) {
    out.status = PositiveStressStatus::Infeasible;
    for (int c : rows) out.certificate.push_back({c, Rational(1)});
    return out;
  }

  bool exact = true;
  for (const auto& s : sb.basis) exact = exact && s.density.has_value();

  // B(i, j): coordinate of basis element j at interior cell rows[i]; density
  // and weighted coordinates agree in sign, so either works for positivity.
  QMatrix B(m, r);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < r; ++j)
      B(i, j) = exact ? (*sb.basis[j].density)[size_t(rows[i])]
                      : Rational(sb.basis[j].weighted[size_t(rows[i])]);

  VecQ g(r, Rational(0));  // column sums: normalization functional
  for (size_t j = 0; j < r; ++j)
    for (size_t i = 0; i < m; ++i) g[j] += B(i, j);
  bool g_zero = std::all_of(g.begin(), g.end(), [](const Rational& q) { return q == 0; });

  Rational tstar = -1;
  VecQ xstar;
  if (!g_zero) {
    // max t s.t. Bx - t*1 >= 0, sum_i (Bx)_i = m.  Variables: x = u - v,
    // t = tp - tn, slacks s.  Column order: u(r) v(r) tp tn s(m).
    size_t cols = 2 * r + 2 + m;
    StandardLP lp;
    lp.A = QMatrix(m + 1, cols);
    lp.b.assign(m + 1, Rational(0));
    lp.c.assign(cols, Rational(0));
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < r; ++j) {
        lp.A(i, j) = B(i, j);
        lp.A(i, r + j) = -B(i, j);
      }
      lp.A(i, 2 * r) = -1;
      lp.A(i, 2 * r + 1) = 1;
      lp.A(i, 2 * r + 2 + i) = -1;
    }
    for (size_t j = 0; j < r; ++j) {
      lp.A(m, j) = g[j];
      lp.A(m, r + j) = -g[j];
    }
    lp.b[m] = Rational(unsigned(m));
    lp.c[2 * r] = -1;  // min -t
    lp.c[2 * r + 1] = 1;
    LPSolution sol = solve_lp(lp);
    if (sol.status == LPStatus::Optimal) {
      tstar = -sol.value;
      xstar.resize(r);
      for (size_t j = 0; j < r; ++j) xstar[j] = sol.x[j] - sol.x[r + j];
    }
  }

  out.min_coefficient = tstar;
  if (tstar > 0) {
    if (R.mode == NumberMode::Floating &&
        (sb.ambiguous || to_double(tstar) <= R.tol)) {
      out.status = PositiveStressStatus::NumericallyAmbiguous;
      return out;
    }
    out.status = PositiveStressStatus::Found;
    out.stress.level = level;
    out.stress.weighted.assign(K.count(level - 1), 0.0);
    if (exact) {
      VecQ dens(K.count(level - 1), Rational(0));
      for (size_t j = 0; j < r; ++j)
        if (xstar[j] != 0)
          for (size_t c = 0; c < dens.size(); ++c)
            dens[c] += (xstar[j] / tstar) * (*sb.basis[j].density)[c];
      out.stress.weighted = densities_to_weighted(K, R, level, dens);
      out.stress.density = std::move(dens);
    } else {
      for (size_t j = 0; j < r; ++j) {
        double f = to_double(xstar[j] / tstar);
        for (size_t c = 0; c < out.stress.weighted.size(); ++c)
          out.stress.weighted[c] += f * sb.basis[j].weighted[c];
      }
    }
    return out;
  }

  if (g_zero) {
    // Every kernel element sums to zero over the interior cells, so the
    // all-ones functional already separates.
    out.status = PositiveStressStatus::Infeasible;
    for (int c : rows) out.certificate.push_back({c, Rational(1)});
    return out;
  }

  // Farkas certificate from the feasibility system Bx >= 1.
  {
    size_t cols = 2 * r + m;
    StandardLP lp;
    lp.A = QMatrix(m, cols);
    lp.b.assign(m, Rational(1));
    lp.c.assign(cols, Rational(0));
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < r; ++j) {
        lp.A(i, j) = B(i, j);
        lp.A(i, r + j) = -B(i, j);
      }
      lp.A(i, 2 * r + i) = -1;
    }
    LPSolution sol = solve_lp(lp);
    if (sol.status == LPStatus::Infeasible) {
      out.status = PositiveStressStatus::Infeasible;
      for (size_t i = 0; i < m; ++i)
        if (sol.farkas_y[i] != 0) out.certificate.push_back({rows[i], sol.farkas_y[i]});
      return out;
    }
    // Feasible here but t* <= 0 can only happen through degenerate float
    // input; report it as ambiguity rather than fabricate a certificate.
    out.status = PositiveStressStatus::NumericallyAmbiguous;
  }
  return out;
}

}  // namespace stresskit
