#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace stresskit {

// Exterior algebra over R^N for tiny N (ambient dimensions here are 2..4).
// Coefficients indexed by bitmask; basis element for mask {i1<...<ik} is
// e_{i1} ^ ... ^ e_{ik}.
template <class S>
struct MultiVector {
  int dim = 0;
  std::vector<S> c;  // size 1 << dim

  MultiVector() = default;
  explicit MultiVector(int n) : dim(n), c(size_t(1) << n, S(0)) {}

  static MultiVector scalar_one(int n) {
    MultiVector m(n);
    m.c[0] = S(1);
    return m;
  }

  static MultiVector from_vector(const std::vector<S>& v) {
    MultiVector m(int(v.size()));
    for (size_t i = 0; i < v.size(); ++i) m.c[size_t(1) << i] = v[i];
    return m;
  }

  MultiVector& operator+=(const MultiVector& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }

  MultiVector operator*(const S& t) const {
    MultiVector r = *this;
    for (auto& x : r.c) x = x * t;
    return r;
  }
};

// Sign of moving every element of mask b past the elements of mask a that
// exceed it (the wedge reordering sign).
inline int wedge_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  for (uint32_t bb = b; bb; bb &= bb - 1) {
    uint32_t i = uint32_t(std::countr_zero(bb));
    swaps += std::popcount(a >> (i + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

template <class S>
MultiVector<S> wedge(const MultiVector<S>& m, const std::vector<S>& v) {
  MultiVector<S> r(m.dim);
  for (uint32_t a = 0; a < m.c.size(); ++a) {
    if (m.c[a] == S(0)) continue;
    for (int i = 0; i < m.dim; ++i) {
      uint32_t bi = uint32_t(1) << i;
      if (a & bi) continue;
      if (v[i] == S(0)) continue;
      S term = m.c[a] * v[i];
      int s = wedge_sign(a, bi);
      if (s < 0)
        r.c[a | bi] -= term;
      else
        r.c[a | bi] += term;
    }
  }
  return r;
}

template <class S>
MultiVector<S> wedge_all(int dim, const std::vector<std::vector<S>>& vs) {
  MultiVector<S> m = MultiVector<S>::scalar_one(dim);
  for (const auto& v : vs) m = wedge(m, v);
  return m;
}

/// Hodge star with respect to the standard orientation of R^dim.
template <class S>
MultiVector<S> hodge_star(const MultiVector<S>& m) {
  MultiVector<S> r(m.dim);
  uint32_t full = (uint32_t(1) << m.dim) - 1;
  for (uint32_t a = 0; a < m.c.size(); ++a) {
    if (m.c[a] == S(0)) continue;
    uint32_t comp = full & ~a;
    int s = wedge_sign(a, comp);  // e_a ^ e_comp = s * e_full
    if (s < 0)
      r.c[comp] -= m.c[a];
    else
      r.c[comp] += m.c[a];
  }
  return r;
}

/// Euclidean inner product on the whole algebra (basis elements orthonormal).
template <class S>
S mv_dot(const MultiVector<S>& x, const MultiVector<S>& y) {
  S acc{0};
  for (size_t i = 0; i < x.c.size(); ++i) acc += x.c[i] * y.c[i];
  return acc;
}

/// (d-1)-fold cross product: vector orthogonal to all vs, with
/// det[vs..., result] > 0 when vs are independent. Length equals the
/// parallelepiped (d-1)-volume of vs.
template <class S>
std::vector<S> generalized_cross(int dim, const std::vector<std::vector<S>>& vs) {
  MultiVector<S> w = hodge_star(wedge_all(dim, vs));
  std::vector<S> r(dim);
  // sign fix: we want star(v1^...^v_{d-1}) with the convention
  // v1^...^v_{d-1}^r = |...| e_full, which hodge_star already provides
  // up to the (grade) reordering sign; star here maps e_a -> s e_comp with
  // e_a ^ e_comp = s e_full, so <vs ^ r> has positive coefficient.
  for (int i = 0; i < dim; ++i) r[i] = w.c[size_t(1) << i];
  return r;
}

}  // namespace stresskit
