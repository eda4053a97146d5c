#pragma once

// Gauss-Jacobi / Gauss-Legendre rules and a globally adaptive Gauss-Kronrod integrator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "pwenv/error.hpp"

namespace pwenv {

/// Quadrature rule: sum_i weights[i] * g(nodes[i]).
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto apply(F&& g) const {
    decltype(g(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * g(nodes[i]);
    return acc;
  }
};

namespace detail {

// Three-term recurrence for P_n^{(a,b)} and P_{n-1}^{(a,b)} at x.
inline std::pair<double, double> jacobi_pair(int n, double a, double b, double x) {
  double p0 = 1.0;
  if (n == 0) return {p0, 0.0};
  double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

inline double jacobi_derivative(int n, double a, double b, double x, double pn, double pnm1) {
  const double s = 2.0 * n + a + b;
  return (n * ((a - b) - s * x) * pn + 2.0 * (n + a) * (n + b) * pnm1) / (s * (1.0 - x * x));
}

}  // namespace detail

/// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b, a,b > -1.
/// Golub-Welsch for the initial nodes, then Newton polishing and the closed-form weights.
inline Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1) fail(ErrorKind::invalid_argument, "gauss_jacobi: n must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) fail(ErrorKind::invalid_weight, "gauss_jacobi: exponents must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    if (k == 0) {
      diag(k) = (b - a) / (a + b + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + a + b;
      double beta;
      if (m == 1.0) {
        beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
      } else {
        beta = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1.0) * (t - 1.0));
      }
      sub(k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(x.begin(), x.end());

  const double log_c = (a + b + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                       std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0);
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = x[i];
    for (int it = 0; it < 8; ++it) {
      auto [pn, pnm1] = detail::jacobi_pair(n, a, b, xi);
      const double dp = detail::jacobi_derivative(n, a, b, xi, pn, pnm1);
      const double step = pn / dp;
      xi -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(xi))) break;
    }
    auto [pn, pnm1] = detail::jacobi_pair(n, a, b, xi);
    const double dp = detail::jacobi_derivative(n, a, b, xi, pn, pnm1);
    rule.nodes[i] = xi;
    rule.weights[i] = std::exp(log_c) / ((1.0 - xi * xi) * dp * dp);
  }
  return rule;
}

/// Cached Gauss-Legendre rule on [-1,1].
inline const Rule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
  return it->second;
}

/// Gauss-Legendre rule mapped to [lo, hi].
inline Rule legendre_on(int n, double lo, double hi) {
  const Rule& ref = gauss_legendre(n);
  Rule out;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  out.nodes.reserve(ref.size());
  out.weights.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.nodes.push_back(mid + half * ref.nodes[i]);
    out.weights.push_back(half * ref.weights[i]);
  }
  return out;
}

/// Rule for int_0^h y^alpha g(y) dy; the weight is absorbed into the returned weights.
inline Rule power_weight_rule(int n, double alpha, double h) {
  const Rule ref = gauss_jacobi(n, 0.0, alpha);
  Rule out;
  const double scale = std::pow(0.5 * h, alpha + 1.0);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.nodes.push_back(0.5 * h * (1.0 + ref.nodes[i]));
    out.weights.push_back(scale * ref.weights[i]);
  }
  return out;
}

// QUADPACK qk21 abscissae and weights.
namespace detail {
inline constexpr double kXgk21[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double kWgk21[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525663461, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg10[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
}  // namespace detail

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
};

/// One 21-point Kronrod panel with embedded 10-point Gauss error estimate.
template <class F>
Panel gk21_panel(F& g, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const double fc = g(mid);
  double resk = fc * detail::kWgk21[10];
  double resg = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * detail::kXgk21[j];
    const double f1 = g(mid - dx);
    const double f2 = g(mid + dx);
    resk += detail::kWgk21[j] * (f1 + f2);
    if (j % 2 == 1) resg += detail::kWg10[j / 2] * (f1 + f2);
  }
  Panel p{lo, hi, resk * half, std::abs((resk - resg) * half)};
  return p;
}

struct AdaptiveOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_panels = 20000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

/// Globally adaptive GK21 over the given initial breakpoints (sorted, at least two).
/// The panel with the largest error estimate is bisected until the total error meets
/// max(abs_tol, rel_tol*|I|) or the panel budget is exhausted.
template <class F>
AdaptiveResult integrate_adaptive(F&& g, const std::vector<double>& breaks, const AdaptiveOptions& opt = {}) {
  auto by_error = [](const Panel& a, const Panel& b) { return a.error < b.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(by_error)> heap(by_error);
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = gk21_panel(g, breaks[i], breaks[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int count = static_cast<int>(heap.size());
  while (!heap.empty() && err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && count < opt.max_panels) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    Panel left = gk21_panel(g, worst.lo, mid);
    Panel right = gk21_panel(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum in panel order so the result does not depend on accumulated round-off.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  AdaptiveResult out;
  out.value = 0.0;
  out.error = 0.0;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.panels = count;
  out.converged = out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
  return out;
}

template <class F>
AdaptiveResult integrate_adaptive(F&& g, double lo, double hi, const AdaptiveOptions& opt = {}) {
  return integrate_adaptive(std::forward<F>(g), std::vector<double>{lo, hi}, opt);
}

/// Uniform breakpoints lo, lo+h, ..., hi (last panel may be shorter).
inline std::vector<double> uniform_breaks(double lo, double hi, double width) {
  std::vector<double> b;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width - 1e-12)));
  b.reserve(n + 1);
  for (int i = 0; i <= n; ++i) b.push_back(i == n ? hi : lo + (hi - lo) * i / n);
  return b;
}

}  // namespace pwenv
