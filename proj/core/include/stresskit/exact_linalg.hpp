#pragma once

#include "stresskit/rational.hpp"

#include <cstdint>
#include <vector>

namespace stresskit {

/// Dense rational matrix, row-major. Desk-scale sizes only.
struct QMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Rational> a;

  QMatrix() = default;
  QMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}

  Rational& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  QMatrix transposed() const;
};

size_t rank(QMatrix m);

/// Basis of the right null space {x : m x = 0}.
std::vector<VecQ> kernel_basis(QMatrix m);

/// Basis of the left null space {x : x^T m = 0}.
std::vector<VecQ> left_kernel_basis(const QMatrix& m);

/// Solves m x = b; nullopt if inconsistent. Underdetermined systems return
/// one particular solution (free variables set to 0).
std::optional<VecQ> solve(QMatrix m, VecQ b);

/// Rank of a 0/1 matrix over GF(2); rows given as bitsets.
size_t rank_mod2(std::vector<std::vector<uint64_t>> rows, size_t ncols);

Rational determinant(QMatrix m);

}  // namespace stresskit
