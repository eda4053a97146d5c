#pragma once

// Dense real polynomials in the monomial basis, c[0] + c[1] s + ... + c[n] s^n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace pwenv::poly {

using Coeffs = std::vector<double>;

inline double eval(const Coeffs& c, double s) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

/// Taylor coefficients at s0: t[m] = P^{(m)}(s0) / m!, by repeated synthetic division.
inline Coeffs taylor_at(const Coeffs& c, double s0) {
  Coeffs t = c;
  const std::size_t n = t.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) t[i - 1] += s0 * t[i];
  }
  return t;
}

/// Q(sigma) = P(s0 + r * sigma).
inline Coeffs reparametrize(const Coeffs& c, double s0, double r) {
  Coeffs t = taylor_at(c, s0);
  double rp = 1.0;
  for (double& v : t) {
    v *= rp;
    rp *= r;
  }
  return t;
}

/// m-th derivative value P^{(m)}(s).
inline double derivative_at(const Coeffs& c, double s, std::size_t m) {
  if (m >= c.size()) return 0.0;
  const Coeffs t = taylor_at(c, s);
  double fact = 1.0;
  for (std::size_t k = 2; k <= m; ++k) fact *= static_cast<double>(k);
  return t[m] * fact;
}

inline Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, double sb = 1.0) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
  return out;
}

inline Coeffs scaled(Coeffs a, double s) {
  for (double& v : a) v *= s;
  return a;
}

/// Drop trailing exact zeros.
inline Coeffs trimmed(Coeffs a) {
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  return a;
}

inline bool is_zero(const Coeffs& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

}  // namespace pwenv::poly
