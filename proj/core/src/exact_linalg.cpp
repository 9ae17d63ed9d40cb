#include "stresskit/exact_linalg.hpp"

#include <sstream>

namespace stresskit {

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) return std::nullopt;
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      size_t frac_len = s.size() - dot - 1;
      boost::multiprecision::cpp_int num(digits);
      boost::multiprecision::cpp_int den = 1;
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      return Rational(num, den);
    }
    return Rational(boost::multiprecision::cpp_int(s));
  } catch (...) {
    return std::nullopt;
  }
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Row-reduces m in place; returns pivot column per pivot row.
std::vector<size_t> rref(QMatrix& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = m(r, c);
    for (size_t j = c; j < m.cols; ++j) m(r, j) /= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<VecQ> kernel_basis(QMatrix m) {
  size_t n = m.cols;
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<VecQ> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    VecQ v(n, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<VecQ> left_kernel_basis(const QMatrix& m) {
  return kernel_basis(m.transposed());
}

std::optional<VecQ> solve(QMatrix m, VecQ b) {
  QMatrix aug(m.rows, m.cols + 1);
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  std::vector<size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  VecQ x(m.cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols);
  return x;
}

size_t rank_mod2(std::vector<std::vector<uint64_t>> rows, size_t ncols) {
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t w = c / 64, bit = c % 64;
    size_t p = r;
    while (p < rows.size() && !((rows[p].size() > w) && (rows[p][w] >> bit & 1))) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      if (rows[i].size() > w && (rows[i][w] >> bit & 1))
        for (size_t k = 0; k < rows[r].size() && k < rows[i].size(); ++k)
          rows[i][k] ^= rows[r][k];
    }
    ++r;
  }
  return r;
}

Rational determinant(QMatrix m) {
  if (m.rows != m.cols) return 0;
  Rational det = 1;
  size_t n = m.rows;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

}  // namespace stresskit
