#pragma once

// Line means, E^p quasi-norms, Hardy and Bergman norms on half-planes and the disk, and
// the weighted envelope integral over the whole plane.
//
// Line means  L_p(y) = int |f(x+iy)|^p dx  are computed on [-X, X] by adaptive
// Gauss-Kronrod, plus a tail model built from the large-|z| breakpoint expansion:
//
//     |f(x+iy)|^p ~ |x+iy|^{-pd} |h_y(x)|^p,   h_y(x) = sum_j a_j e^{-y t_j} e^{i x t_j},
//
// whose x-average M is a period mean when the breakpoint frequencies are commensurate.
// The remaining O(X^{-pd}) error is removed by Richardson extrapolation between two
// phase-aligned truncations X and 2X; the size of that correction is reported as error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwenv/cayley.hpp"
#include "pwenv/error.hpp"
#include "pwenv/evaluate.hpp"
#include "pwenv/quadrature.hpp"
#include "pwenv/spectrum.hpp"

namespace pwenv {

struct QuadratureSpec {
  double x_truncation = 32.0;  // minimum X for line means
  int x_panel_count = 64;       // minimum number of initial x-panels on [-X, X]
  double y_truncation = 64.0;   // top of the Hardy y-grid
  int jacobi_node_count = 16;   // nodes of the y^alpha rule near y = 0
  double rel_tolerance = 1e-10;
  bool tail_model = true;

  void validate() const {
    if (!(x_truncation > 0.0) || !(y_truncation > 0.0))
      fail(ErrorKind::invalid_argument, "quadrature truncations must be positive");
    if (x_panel_count < 4 || jacobi_node_count < 4)
      fail(ErrorKind::invalid_argument, "quadrature node counts must be >= 4");
    if (!(rel_tolerance > 0.0) || rel_tolerance > 1e-2)
      fail(ErrorKind::invalid_argument, "rel_tolerance must lie in (0, 1e-2]");
  }
};

struct EnvelopeParams {
  double p = 0.75;
  double q = 1.0;

  double alpha() const { return q / p - 2.0; }

  void validate() const {
    if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::invalid_argument, "envelope exponent p must lie in (0, 1)");
    if (!(q > p && q <= 1.0)) fail(ErrorKind::invalid_argument, "envelope exponent q must lie in (p, 1]");
  }
};

struct NormReport {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
  double tail_contribution = 0.0;
  std::vector<std::string> flags;
  /// Optional sampled profile, e.g. (y, line mean) pairs of a Hardy sup.
  std::vector<std::pair<double, double>> profile;
  double attained_at = std::numeric_limits<double>::quiet_NaN();

  bool flagged(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
  void flag(const std::string& f) {
    if (!flagged(f)) flags.push_back(f);
  }
};

enum class HalfPlane { upper, lower };

namespace detail {

/// Largest delta such that every entry is an integer multiple of delta (within tol),
/// or nullopt when the search drops below `floor`.
inline std::optional<double> real_gcd(const std::vector<double>& values, double tol, double floor) {
  double g = 0.0;
  for (double v : values) {
    double a = std::abs(v);
    if (a <= tol) continue;
    if (g == 0.0) {
      g = a;
      continue;
    }
    double b = g;
    if (a < b) std::swap(a, b);
    while (true) {
      if (b < floor) return std::nullopt;
      const double r = std::abs(a - b * std::round(a / b));
      if (r <= tol * std::max(1.0, a)) break;
      a = b;
      b = r;
    }
    g = b;
  }
  if (g == 0.0) return std::nullopt;
  return g;
}

struct TailShape {
  double mean = 0.0;    // x-average of |h_y|^p
  double period = 0.0;  // phase period of |h_y|, 0 if none exists
  bool commensurate = true;
  double bandwidth = 0.0;  // spread of the non-negligible frequencies
};

inline TailShape tail_shape(const BandLimitedFunction& f, double p, double y) {
  TailShape out;
  auto terms = f.leading_terms();
  double wmax = 0.0;
  for (auto& [t, a] : terms) {
    a *= std::exp(-y * t);
    wmax = std::max(wmax, std::abs(a));
  }
  std::vector<std::pair<double, cplx>> live;
  for (const auto& [t, a] : terms)
    if (std::abs(a) > 1e-15 * wmax) live.emplace_back(t, a);
  if (live.empty()) return out;
  if (live.size() == 1) {
    out.mean = std::pow(std::abs(live.front().second), p);
    out.period = 0.0;
    return out;
  }
  std::vector<double> diffs;
  double tmin = live.front().first, tmax = live.front().first;
  for (const auto& [t, a] : live) {
    diffs.push_back(t - live.front().first);
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  out.bandwidth = tmax - tmin;
  auto h = [&](double x) {
    cplx acc{};
    for (const auto& [t, a] : live) acc += a * cplx(std::cos(x * t), std::sin(x * t));
    return std::pow(std::abs(acc), p);
  };
  const auto delta = real_gcd(diffs, 1e-10, 1e-3);
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.max_panels = 200000;
  if (delta) {
    out.period = kTwoPi / *delta;
    const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * out.period * out.bandwidth / kTwoPi)));
    out.mean = integrate_adaptive(h, uniform_breaks(0.0, out.period, out.period / panels), opt).value / out.period;
  } else {
    out.commensurate = false;
    double dmin = out.bandwidth;
    for (std::size_t i = 0; i < live.size(); ++i)
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const double d = std::abs(live[i].first - live[j].first);
        if (d > 1e-10) dmin = std::min(dmin, d);
      }
    // The mean only scales the tail term, so a plain average over a few hundred beat
    // periods is enough.
    const double window = std::min(1e4, 200.0 * kTwoPi / dmin);
    const int n = std::min(20000, static_cast<int>(std::ceil(4.0 * window * out.bandwidth / kTwoPi)) + 64);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += h((i + 0.5) * window / n);
    out.mean = acc / n;
  }
  return out;
}

/// 2 * int_X^inf (x^2 + y^2)^{-s/2} dx.
inline double tail_weight(double X, double y, double s) {
  const Rule rule = power_weight_rule(24, s - 2.0, 1.0);
  const double ratio = y / X;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = rule.nodes[i];
    acc += rule.weights[i] * std::pow(1.0 + ratio * ratio * v * v, -0.5 * s);
  }
  return 2.0 * std::pow(X, 1.0 - s) * acc;
}

/// Spread of the breakpoint frequencies that still matter on the line Im z = y.
inline double effective_bandwidth(const BandLimitedFunction& f, double y) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> logw;
  for (const Breakpoint& b : f.breakpoints()) {
    double mag = 0.0;
    for (std::size_t m = 0; m < b.jump_re.size(); ++m) mag = std::max(mag, std::abs(b.beta(m)));
    if (mag == 0.0) continue;
    const double lw = std::log(mag) - y * b.t;
    logw.emplace_back(b.t, lw);
    best = std::max(best, lw);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [t, lw] : logw) {
    if (lw > best - 37.0) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  return hi > lo ? hi - lo : 0.0;
}

}  // namespace detail

inline void require_integrable(const BandLimitedFunction& f, double p) {
  if (!(p > 0.0)) fail(ErrorKind::invalid_argument, "exponent p must be positive");
  if (f.is_zero()) return;
  if (!(p * f.decay_order() > 1.0)) {
    const int need = static_cast<int>(std::floor(1.0 / p)) - 1;
    fail(ErrorKind::diverges, "int |f|^p dx diverges: p * decay_order = " + std::to_string(p * f.decay_order()) +
                                  " <= 1; a density of smoothness >= " + std::to_string(std::max(need, 0)) +
                                  " is required");
  }
}

/// int |f(x+iy)|^p dx.
inline NormReport lp_line_norm(const BandLimitedFunction& f, double p, double y, const QuadratureSpec& quad) {
  quad.validate();
  require_integrable(f, p);
  NormReport out;
  if (f.is_zero()) return out;

  const double s = p * f.decay_order();
  const detail::TailShape shape = quad.tail_model ? detail::tail_shape(f, p, y) : detail::TailShape{};
  double X1 = std::max({quad.x_truncation, f.expansion_radius(), 8.0 * std::abs(y)});
  // Truncations X1, 3/2 X1, 9/4 X1; all whole periods when the tail is periodic.
  const double rho = 1.5;
  if (shape.period > 0.0 && shape.commensurate) X1 = 4.0 * shape.period * std::ceil(X1 / (4.0 * shape.period));
  const double X2 = rho * X1, X3 = rho * X2;

  const double band = std::max(detail::effective_bandwidth(f, y), 1e-9);
  double width = std::min(kTwoPi / band, 2.0 * X1 / quad.x_panel_count);
  width = std::max(width, 1e-3);

  auto integrand = [&](double x) { return std::pow(std::abs(f(cplx(x, y))), p); };
  AdaptiveOptions opt;
  opt.rel_tol = 0.1 * quad.rel_tolerance;
  opt.max_panels = 400000;
  const AdaptiveResult inner = integrate_adaptive(integrand, uniform_breaks(-X1, X1, width), opt);
  AdaptiveOptions outer_opt = opt;
  outer_opt.abs_tol = 0.05 * quad.rel_tolerance * std::abs(inner.value);
  double quad_err = inner.error;
  bool converged = inner.converged;
  // Symmetric shells X_a < |x| < X_b.
  auto shell = [&](double xa, double xb) {
    const AdaptiveResult l = integrate_adaptive(integrand, uniform_breaks(-xb, -xa, width), outer_opt);
    const AdaptiveResult r = integrate_adaptive(integrand, uniform_breaks(xa, xb, width), outer_opt);
    quad_err += l.error + r.error;
    converged = converged && l.converged && r.converged;
    return l.value + r.value;
  };
  const double direct1 = inner.value;
  const double direct2 = direct1 + shell(X1, X2);
  const double direct3 = direct2 + shell(X2, X3);
  if (!converged) out.flag("x-quadrature-not-converged");

  if (!quad.tail_model) {
    out.value = direct3;
    out.quadrature_error_estimate = quad_err + (direct3 - direct2);
    out.flag("tail-model-disabled");
    return out;
  }

  const double T3 = shape.mean * detail::tail_weight(X3, y, s);
  const double I1 = direct1 + shape.mean * detail::tail_weight(X1, y, s);
  const double I2 = direct2 + shape.mean * detail::tail_weight(X2, y, s);
  const double I3 = direct3 + T3;
  if (shape.commensurate) {
    // I(X) = I + a X^{-s} + b X^{-s-1} + ...
    const double r1 = std::pow(rho, -s), r2 = std::pow(rho, -s - 1.0);
    const double J1 = (I2 - r1 * I1) / (1.0 - r1);
    const double J2 = (I3 - r1 * I2) / (1.0 - r1);
    out.value = (J2 - r2 * J1) / (1.0 - r2);
    out.quadrature_error_estimate = quad_err + std::abs(out.value - J2);
  } else {
    out.value = I3;
    out.quadrature_error_estimate = quad_err + std::abs(I3 - I2);
    out.flag("incommensurate-tail");
  }
  out.tail_contribution = std::min(T3 + std::max(out.value - I3, 0.0), out.value);
  return out;
}

inline void require_type_pi(const BandLimitedFunction& f) {
  if (exp_type(f) > kPi + 1e-12) fail(ErrorKind::not_in_ep, "exponential type exceeds pi");
}

/// (int |f(x)|^p dx)^{1/p}.
inline NormReport ep_norm(const BandLimitedFunction& f, double p, const QuadratureSpec& quad) {
  require_type_pi(f);
  NormReport line = lp_line_norm(f, p, 0.0, quad);
  NormReport out = line;
  if (line.value <= 0.0) {
    out.value = 0.0;
    return out;
  }
  out.value = std::pow(line.value, 1.0 / p);
  const double scale = out.value / (p * line.value);
  out.quadrature_error_estimate = scale * line.quadrature_error_estimate;
  out.tail_contribution = scale * line.tail_contribution;
  return out;
}

namespace detail {

inline BandLimitedFunction to_upper(const BandLimitedFunction& f, HalfPlane side) {
  const Interval sup = f.density().support();
  const double tol = 1e-12;
  if (side == HalfPlane::upper) {
    if (!f.is_zero() && (sup.lo < -tol || sup.hi > kTwoPi + tol))
      fail(ErrorKind::not_hardy, "upper half-plane needs spectrum inside [0, 2pi]");
    return f;
  }
  if (!f.is_zero() && (sup.lo < -kTwoPi - tol || sup.hi > tol))
    fail(ErrorKind::not_hardy, "lower half-plane needs spectrum inside [-2pi, 0]");
  return BandLimitedFunction(reflect(f.density()));
}

struct WeightedIntegral {
  double value = 0.0;
  double error = 0.0;
  double tail = 0.0;
  std::vector<std::string> flags;
};

/// int_0^inf y^alpha L_p(y) dy for g with spectrum in [0, 2pi].
inline WeightedIntegral upper_weighted_integral(const BandLimitedFunction& g, double p, double alpha,
                                                const QuadratureSpec& quad) {
  WeightedIntegral out;
  if (g.is_zero()) return out;
  if (!(alpha > -1.0)) fail(ErrorKind::invalid_weight, "weight exponent alpha must exceed -1");
  require_integrable(g, p);

  const Interval sup = g.density().support();
  const double gap = std::max(sup.lo, 0.0);
  const double width = sup.length();

  auto line = [&](double y) {
    NormReport r = lp_line_norm(g, p, y, quad);
    for (const auto& f : r.flags)
      if (std::find(out.flags.begin(), out.flags.end(), f) == out.flags.end()) out.flags.push_back(f);
    return r;
  };

  // Endpoint segment [0, y0] with the y^alpha rule; two orders give the error estimate.
  const double y0 = std::min(0.5, 1.0 / width);
  double near = 0.0, near_lo = 0.0, line_err = 0.0, worst_rel = 0.0;
  {
    const int n = quad.jacobi_node_count;
    const Rule hi = power_weight_rule(n, alpha, y0);
    const Rule lo = power_weight_rule(n / 2, alpha, y0);
    for (std::size_t i = 0; i < hi.size(); ++i) {
      NormReport r = line(hi.nodes[i]);
      near += hi.weights[i] * r.value;
      line_err += hi.weights[i] * r.quadrature_error_estimate;
    }
    for (std::size_t i = 0; i < lo.size(); ++i) near_lo += lo.weights[i] * line(lo.nodes[i]).value;
  }
  double total = near;
  double err = std::abs(near - near_lo);

  // Where the exponential contributions of positive breakpoints are negligible.
  bool touches_zero = gap <= 1e-12;
  double y_asym = std::numeric_limits<double>::infinity();
  const Breakpoint* origin = nullptr;
  int m0 = 0;
  if (touches_zero) {
    double t1 = std::numeric_limits<double>::infinity();
    for (const Breakpoint& b : g.breakpoints()) {
      if (std::abs(b.t) <= 1e-12) origin = &b;
      else if (b.t > 0.0) t1 = std::min(t1, b.t);
    }
    if (origin == nullptr) fail(ErrorKind::diverges, "spectrum touches 0 without a breakpoint there");
    const std::size_t n = origin->jump_re.size();
    m0 = static_cast<int>(n);
    for (std::size_t m = 0; m < n; ++m)
      if (origin->beta(m) != cplx{}) {
        m0 = static_cast<int>(m);
        break;
      }
    const double gamma = p * (m0 + 1) - alpha - 3.0;
    if (!(gamma > -1.0))
      fail(ErrorKind::diverges, "weighted y-integral diverges: the density vanishes only to order " +
                                    std::to_string(m0) + " at the spectral endpoint 0");
    y_asym = std::max(1.0, std::log(100.0 / quad.rel_tolerance) / (p * t1));
  }

  // Geometric Kronrod panels on [y0, ...). With a spectral gap delta, L(y) e^{p delta y}
  // is non-increasing, which bounds the remainder beyond the last line evaluated.
  const double y_cap = 1e5;
  const double c = p * gap;
  double a = y0;
  while (true) {
    double b = 4.0 * a;
    if (touches_zero && b >= y_asym) b = y_asym;
    double y_last = 0.0, l_last = 0.0;
    auto weighted = [&](double y) {
      const NormReport r = line(y);
      if (r.value > 0.0) worst_rel = std::max(worst_rel, r.quadrature_error_estimate / r.value);
      if (y > y_last) y_last = y, l_last = r.value;
      return std::pow(y, alpha) * r.value;
    };
    const Panel panel = gk21_panel(weighted, a, b);
    total += panel.value;
    err += panel.error;
    a = b;
    if (touches_zero) {
      if (a >= y_asym) break;
      continue;
    }
    if (c > alpha / y_last) {
      const double remainder = l_last * std::pow(y_last, alpha) / (c - alpha / y_last);
      if (panel.value <= 0.1 * quad.rel_tolerance * total && remainder <= 0.1 * quad.rel_tolerance * total) {
        err += remainder;
        break;
      }
    }
    if (a > y_cap) fail(ErrorKind::diverges, "y-panel sums are not Cauchy up to y = 1e5");
  }

  if (touches_zero) {
    // Beyond y_asym only the breakpoint at 0 matters: g(z) = r0(z), a polynomial in 1/z.
    auto r0 = [&](cplx z) {
      const cplx inv = 1.0 / cplx(-z.imag(), z.real());
      cplx acc{}, ipow = inv;
      for (std::size_t m = 0; m < origin->jump_re.size(); ++m) {
        acc += origin->beta(m) * ipow;
        ipow *= inv;
      }
      return acc;
    };
    auto rational_line = [&](double y) {
      auto integrand = [&](double th) {
        const double c = std::cos(th);
        if (c <= 0.0) return 0.0;
        return std::pow(std::abs(r0(cplx(y * std::tan(th), y))), p) * y / (c * c);
      };
      AdaptiveOptions opt;
      opt.rel_tol = 1e-12;
      return integrate_adaptive(integrand, uniform_breaks(-kPi / 2, kPi / 2, kPi / 16), opt).value;
    };
    const double gamma = p * (m0 + 1) - alpha - 3.0;
    auto tail_with = [&](int n) {
      const Rule rule = power_weight_rule(n, gamma, 1.0);
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = rule.nodes[i];
        const double y = y_asym / v;
        // (Y/v)^alpha L(Y/v) Y / v^2, divided by the v^gamma absorbed in the rule.
        acc += rule.weights[i] * std::pow(y, alpha) * rational_line(y) * y_asym / (v * v) / std::pow(v, gamma);
      }
      return acc;
    };
    const double tail = tail_with(20);
    const double tail_lo = tail_with(10);
    total += tail;
    err += std::abs(tail - tail_lo);
    out.tail = tail;
  }

  out.value = total;
  out.error = err + line_err + worst_rel * total;
  return out;
}

}  // namespace detail

/// sup_y (int |f(x+iy)|^p dx)^{1/p} over the geometric grid {Y 2^{-j}} and y = 0.
inline NormReport hardy_halfplane_norm(const BandLimitedFunction& f, double p, HalfPlane side,
                                       const QuadratureSpec& quad) {
  quad.validate();
  const BandLimitedFunction g = detail::to_upper(f, side);
  NormReport out;
  if (g.is_zero()) {
    out.attained_at = 0.0;
    return out;
  }
  std::vector<double> ys{0.0};
  for (double y = quad.y_truncation; y >= 1.0 / 256.0; y *= 0.5) ys.push_back(y);
  std::sort(ys.begin(), ys.end());
  double best = -1.0, best_err = 0.0;
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity(), prev_err = 0.0;
  for (double y : ys) {
    NormReport r = lp_line_norm(g, p, y, quad);
    for (const auto& fl : r.flags) out.flag(fl);
    out.profile.emplace_back(side == HalfPlane::upper ? y : -y, r.value);
    if (r.value > prev + r.quadrature_error_estimate + prev_err) monotone = false;
    prev = r.value;
    prev_err = r.quadrature_error_estimate;
    if (r.value > best) {
      best = r.value;
      best_err = r.quadrature_error_estimate;
      out.attained_at = side == HalfPlane::upper ? y : -y;
      out.tail_contribution = r.tail_contribution;
    }
  }
  if (!monotone) out.flag("means-not-monotone");
  out.value = std::pow(best, 1.0 / p);
  const double scale = out.value / (p * best);
  out.quadrature_error_estimate = scale * best_err;
  out.tail_contribution *= scale;
  return out;
}

/// (int_{half-plane} |f(x+iy)|^p |y|^alpha dx dy)^{1/p}.
inline NormReport bergman_halfplane_norm(const BandLimitedFunction& f, double p, double alpha, HalfPlane side,
                                         const QuadratureSpec& quad) {
  quad.validate();
  if (!(alpha > -1.0)) fail(ErrorKind::invalid_weight, "weight exponent alpha must exceed -1");
  const BandLimitedFunction g = detail::to_upper(f, side);
  const detail::WeightedIntegral w = detail::upper_weighted_integral(g, p, alpha, quad);
  NormReport out;
  out.flags = w.flags;
  if (w.value <= 0.0) return out;
  out.value = std::pow(w.value, 1.0 / p);
  const double scale = out.value / (p * w.value);
  out.quadrature_error_estimate = scale * w.error;
  out.tail_contribution = std::min(scale * w.tail, out.value);
  return out;
}

/// (int_C e^{-q pi |y|} |y|^{q/p-2} |f(x+iy)|^q dx dy)^{1/q}, as the sum of the two
/// half-plane Bergman integrals of e^{i pi z} f on C+ and e^{-i pi z} f on C-.
inline NormReport envelope_integral_norm(const BandLimitedFunction& f, const EnvelopeParams& params,
                                         const QuadratureSpec& quad) {
  params.validate();
  quad.validate();
  NormReport out;
  if (f.is_zero()) return out;
  require_type_pi(f);
  const double q = params.q;
  const double alpha = params.alpha();
  const BandLimitedFunction plus(modulate(f.density(), kPi));
  const BandLimitedFunction minus(reflect(modulate(f.density(), -kPi)));
  const detail::WeightedIntegral up = detail::upper_weighted_integral(plus, q, alpha, quad);
  const detail::WeightedIntegral down = detail::upper_weighted_integral(minus, q, alpha, quad);
  for (const auto& fl : up.flags) out.flag(fl);
  for (const auto& fl : down.flags) out.flag(fl);
  const double total = up.value + down.value;
  if (total <= 0.0) return out;
  out.value = std::pow(total, 1.0 / q);
  const double scale = out.value / (q * total);
  out.quadrature_error_estimate = scale * (up.error + down.error);
  out.tail_contribution = std::min(scale * (up.tail + down.tail), out.value);
  return out;
}

/// (int_D |g(w)|^p (1 - |w|^2)^alpha dA)^{1/p}; polar coordinates with adaptive
/// quadrature in the angle and in the radius, the (1-r)^alpha factor removed by the
/// substitution u = (1-r)^{alpha+1} on [1/2, 1].
inline NormReport bergman_disk_norm(const DiskFunction& g, double p, double alpha, const QuadratureSpec& quad) {
  quad.validate();
  if (!(alpha > -1.0)) fail(ErrorKind::invalid_weight, "weight exponent alpha must exceed -1");
  if (!(p > 0.0)) fail(ErrorKind::invalid_argument, "exponent p must be positive");
  NormReport out;
  if (g.is_zero()) return out;
  double worst_inner = 0.0;
  auto circle_mean = [&](double r) {
    auto integrand = [&](double th) { return std::pow(std::abs(g(std::polar(r, th))), p); };
    AdaptiveOptions opt;
    opt.rel_tol = 0.1 * quad.rel_tolerance;
    opt.abs_tol = 1e-15;
    opt.max_panels = 4000;
    const AdaptiveResult res = integrate_adaptive(integrand, uniform_breaks(0.0, kTwoPi, kTwoPi / 16), opt);
    if (res.value > 0.0) worst_inner = std::max(worst_inner, res.error / res.value);
    return res.value;
  };
  AdaptiveOptions opt;
  opt.rel_tol = quad.rel_tolerance;
  opt.max_panels = 2000;
  const AdaptiveResult inner = integrate_adaptive(
      [&](double r) { return r * std::pow(1.0 - r * r, alpha) * circle_mean(r); }, 0.0, 0.5, opt);
  const double a1 = alpha + 1.0;
  const double umax = std::pow(0.5, a1);
  const AdaptiveResult outer = integrate_adaptive(
      [&](double u) {
        const double r = 1.0 - std::pow(u, 1.0 / a1);
        return r * std::pow(1.0 + r, alpha) * circle_mean(r) / a1;
      },
      uniform_breaks(0.0, umax, umax / 8), opt);
  if (!inner.converged || !outer.converged) out.flag("disk-quadrature-not-converged");
  const double total = inner.value + outer.value;
  if (total <= 0.0) return out;
  out.value = std::pow(total, 1.0 / p);
  const double scale = out.value / (p * total);
  out.quadrature_error_estimate = scale * (inner.error + outer.error + worst_inner * total);
  return out;
}

}  // namespace pwenv
