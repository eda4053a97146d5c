#pragma once

// The Cayley map c(z) = (i - z)/(i + z) from the upper half-plane onto the unit disk,
// and holomorphic functions on the disk.

#include <cmath>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "pwenv/error.hpp"
#include "pwenv/evaluate.hpp"

namespace pwenv {

inline constexpr cplx kI{0.0, 1.0};

inline cplx cayley(cplx z) {
  const cplx den = kI + z;
  if (std::abs(den) == 0.0) fail(ErrorKind::pole, "cayley: z = -i is a pole");
  return (kI - z) / den;
}

inline cplx cayley_inverse(cplx w) {
  const cplx den = 1.0 + w;
  if (std::abs(den) == 0.0) fail(ErrorKind::pole, "cayley_inverse: w = -1 is a pole");
  return kI * (1.0 - w) / den;
}

/// c'(z) = -2i / (i + z)^2.
inline cplx cayley_derivative(cplx z) {
  const cplx den = kI + z;
  if (std::abs(den) == 0.0) fail(ErrorKind::pole, "cayley: z = -i is a pole");
  return -2.0 * kI / (den * den);
}

struct CayleyIdentities {
  double one_minus_modulus_sq = 0.0;  // 1 - |c(z)|^2, computed directly
  double derivative_modulus_sq = 0.0;  // |c'(z)|^2, computed directly
  double closed_one_minus_modulus_sq = 0.0;  // 4y / |z+i|^2
  double closed_derivative_modulus_sq = 0.0;  // 4 / |z+i|^4
  double max_rel_gap = 0.0;
};

/// Both Cayley identities evaluated directly and in closed form.
inline CayleyIdentities cayley_identities(cplx z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::domain, "cayley_identities needs Im z > 0");
  CayleyIdentities out;
  const cplx w = cayley(z);
  out.one_minus_modulus_sq = 1.0 - std::norm(w);
  out.derivative_modulus_sq = std::norm(cayley_derivative(z));
  const double m = std::norm(z + kI);
  out.closed_one_minus_modulus_sq = 4.0 * z.imag() / m;
  out.closed_derivative_modulus_sq = 4.0 / (m * m);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  out.max_rel_gap = std::max(rel(out.one_minus_modulus_sq, out.closed_one_minus_modulus_sq),
                             rel(out.derivative_modulus_sq, out.closed_derivative_modulus_sq));
  return out;
}

/// Holomorphic function on the unit disk: a finite power series, a scaled principal
/// power a (1 - w)^beta, or F o c^{-1} for a band-limited F viewed on the upper half-plane.
class DiskFunction {
 public:
  struct PowerSeries {
    std::vector<cplx> coeffs;
  };
  struct OneMinusPower {
    cplx scale;
    double beta;
  };
  struct Transferred {
    BandLimitedFunction upper;
  };

  static DiskFunction power_series(std::vector<cplx> coeffs) { return DiskFunction(PowerSeries{std::move(coeffs)}); }
  static DiskFunction one_minus_power(double beta, cplx scale = 1.0) {
    return DiskFunction(OneMinusPower{scale, beta});
  }
  static DiskFunction transferred(BandLimitedFunction f) { return DiskFunction(Transferred{std::move(f)}); }

  cplx operator()(cplx w) const {
    if (const auto* ps = std::get_if<PowerSeries>(&impl_)) {
      cplx acc{};
      for (std::size_t i = ps->coeffs.size(); i-- > 0;) acc = acc * w + ps->coeffs[i];
      return acc;
    }
    if (const auto* op = std::get_if<OneMinusPower>(&impl_)) return op->scale * std::pow(1.0 - w, op->beta);
    return std::get<Transferred>(impl_).upper(cayley_inverse(w));
  }

  /// F(z) = g(c(z)) on the upper half-plane.
  cplx on_upper(cplx z) const {
    if (const auto* tr = std::get_if<Transferred>(&impl_)) return tr->upper(z);
    return (*this)(cayley(z));
  }

  bool is_zero() const {
    if (const auto* ps = std::get_if<PowerSeries>(&impl_)) {
      for (const cplx& c : ps->coeffs)
        if (c != cplx{}) return false;
      return true;
    }
    if (const auto* op = std::get_if<OneMinusPower>(&impl_)) return op->scale == cplx{};
    return std::get<Transferred>(impl_).upper.is_zero();
  }

  bool is_transferred() const { return std::holds_alternative<Transferred>(impl_); }

 private:
  template <class T>
  explicit DiskFunction(T impl) : impl_(std::move(impl)) {}
  std::variant<PowerSeries, OneMinusPower, Transferred> impl_;
};

}  // namespace pwenv
