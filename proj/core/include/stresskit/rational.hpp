#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace stresskit {

using Rational = boost::multiprecision::cpp_rational;

using VecQ = std::vector<Rational>;
using VecD = std::vector<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Canonical "p/q" (or "p" for integers) text form; round-trip stable.
std::string rational_to_string(const Rational& q);

/// Parses "p", "p/q", or a plain decimal like "-1.25" (converted exactly).
std::optional<Rational> parse_rational(const std::string& s);

// small dense vector helpers (ambient dimensions are tiny, 2..4)
template <class S>
std::vector<S> vsub(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
std::vector<S> vadd(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
std::vector<S> vscale(const S& t, const std::vector<S>& a) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

template <class S>
S vdot(const std::vector<S>& a, const std::vector<S>& b) {
  S acc{0};
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline VecD to_vecd(const VecQ& v) {
  VecD r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

}  // namespace stresskit
