#pragma once

// The weighted Bergman integral of g on the disk against its Cayley pull-back:
//
//   int_D |g|^p (1-|w|^2)^alpha dA = 4^{alpha+1} int_{C+} |F(z) / (z+i)^{(2 alpha+4)/p}|^p y^alpha dx dy,
//
// with F = g o c.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pwenv/cayley.hpp"
#include "pwenv/norms.hpp"
#include "pwenv/quadrature.hpp"

namespace pwenv {

struct TransferReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double rel_gap = 0.0;
  std::vector<std::string> flags;

  double budget() const { return lhs_error + rhs_error; }
};

namespace detail {

struct Integral2D {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// 4^{alpha+1} int_{C+} |F|^p |z+i|^{-(2 alpha+4)} y^alpha, with x = (y+1) tan(theta)
/// inside, u = y^{alpha+1} on [0, 1] and v = 1/y on [1, inf).
inline Integral2D transfer_rhs(const DiskFunction& g, double p, double alpha, double rel_tol) {
  Integral2D out;
  const double power = (2.0 * alpha + 4.0) / p;
  double worst_inner = 0.0;
  auto inner = [&](double y) {
    const double h = y + 1.0;
    auto integrand = [&](double th) {
      const double c = std::cos(th);
      if (c <= 0.0) return 0.0;
      const cplx z(h * std::tan(th), y);
      // Im(z + i) >= 1, so the principal branch of the power is never cut.
      const cplx den = std::pow(z + kI, power);
      return std::pow(std::abs(g.on_upper(z) / den), p) * h / (c * c);
    };
    AdaptiveOptions opt;
    opt.rel_tol = 0.1 * rel_tol;
    opt.max_panels = 4000;
    const AdaptiveResult r = integrate_adaptive(integrand, uniform_breaks(-kPi / 2, kPi / 2, kPi / 32), opt);
    if (!r.converged) out.converged = false;
    if (r.value > 0.0) worst_inner = std::max(worst_inner, r.error / r.value);
    return r.value;
  };
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_panels = 2000;
  const double a1 = alpha + 1.0;
  const AdaptiveResult lower = integrate_adaptive(
      [&](double u) { return inner(std::pow(u, 1.0 / a1)) / a1; }, uniform_breaks(0.0, 1.0, 0.125), opt);
  const AdaptiveResult upper = integrate_adaptive(
      [&](double v) {
        if (v <= 0.0) return 0.0;
        return std::pow(v, -alpha - 2.0) * inner(1.0 / v);
      },
      uniform_breaks(0.0, 1.0, 0.125), opt);
  if (!lower.converged || !upper.converged) out.converged = false;
  const double scale = std::pow(4.0, a1);
  out.value = scale * (lower.value + upper.value);
  out.error = scale * (lower.error + upper.error) + worst_inner * out.value;
  return out;
}

}  // namespace detail

inline TransferReport verify_transfer_identity(const DiskFunction& g, double p, double alpha,
                                               const QuadratureSpec& quad) {
  quad.validate();
  if (!(alpha > -1.0)) fail(ErrorKind::invalid_weight, "weight exponent alpha must exceed -1");
  if (!(p > 0.0)) fail(ErrorKind::invalid_argument, "exponent p must be positive");
  TransferReport out;
  if (g.is_zero()) return out;
  const NormReport disk = bergman_disk_norm(g, p, alpha, quad);
  out.flags = disk.flags;
  out.lhs = std::pow(disk.value, p);
  out.lhs_error = p * out.lhs / disk.value * disk.quadrature_error_estimate;
  const detail::Integral2D rhs = detail::transfer_rhs(g, p, alpha, quad.rel_tolerance);
  if (!rhs.converged) out.flags.push_back("half-plane-quadrature-not-converged");
  if (!std::isfinite(rhs.value)) fail(ErrorKind::diverges, "transfer integral is not finite");
  out.rhs = rhs.value;
  out.rhs_error = rhs.error;
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), std::abs(out.rhs));
  return out;
}

}  // namespace pwenv
