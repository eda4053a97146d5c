#pragma once

// The embedding j(f) = (e^{i pi z} f, e^{-i pi z} f), the spectral multiplier T and the
// projection Q with Q(j(f)) = f, the counterexample family f^eps, and an upper bound for
// the envelope quasi-norm from finite atomic decompositions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pwenv/error.hpp"
#include "pwenv/evaluate.hpp"
#include "pwenv/norms.hpp"
#include "pwenv/simplex.hpp"
#include "pwenv/spectrum.hpp"

namespace pwenv {

struct HalfPlanePair {
  BandLimitedFunction plus;   // spectrum in [0, 2pi]
  BandLimitedFunction minus;  // spectrum in [-2pi, 0]

  void validate() const {
    const double tol = 1e-12;
    if (!plus.is_zero()) {
      const Interval s = plus.density().support();
      if (s.lo < -tol || s.hi > kTwoPi + tol) fail(ErrorKind::invalid_argument, "plus component needs spectrum in [0, 2pi]");
    }
    if (!minus.is_zero()) {
      const Interval s = minus.density().support();
      if (s.lo < -kTwoPi - tol || s.hi > tol) fail(ErrorKind::invalid_argument, "minus component needs spectrum in [-2pi, 0]");
    }
  }
};

inline HalfPlanePair embed_j(const BandLimitedFunction& f) {
  require_type_pi(f);
  return {BandLimitedFunction(modulate(f.density(), kPi)), BandLimitedFunction(modulate(f.density(), -kPi))};
}

/// u phi_hat + v psi_hat on the spectral side.
inline SpectralDensity apply_T(const BandLimitedFunction& u, const BandLimitedFunction& v, const PartitionOfUnity& pu) {
  const SpectralDensity out = add(multiply_pointwise(u.density(), pu.phi_hat), multiply_pointwise(v.density(), pu.psi_hat));
  if (!out.is_zero()) {
    const Interval s = out.support();
    if (s.lo < -kTwoPi - 1e-12 || s.hi > kTwoPi + 1e-12) fail(ErrorKind::invalid_argument, "T output leaves [-2pi, 2pi]");
  }
  return out;
}

inline BandLimitedFunction project_Q(const HalfPlanePair& pair, const PartitionOfUnity& pu) {
  pair.validate();
  const BandLimitedFunction u(pair.plus.is_zero() ? SpectralDensity::zero() : modulate(pair.plus.density(), -kPi));
  const BandLimitedFunction v(pair.minus.is_zero() ? SpectralDensity::zero() : modulate(pair.minus.density(), kPi));
  const SpectralDensity t = apply_T(u, v, pu);
  if (t.sup_abs_outside(-kPi, kPi) > 1e-14)
    fail(ErrorKind::invalid_argument, "T(u, v) does not vanish outside [-pi, pi]");
  return BandLimitedFunction(truncate(t, -kPi, kPi));
}

// ---------------------------------------------------------------------------------------
// Counterexample family

/// Bump on [-pi, -pi + eps] normalized to unit L1 mass.
inline BandLimitedFunction counterexample_family(double eps, int k) {
  if (!(eps > 0.0 && eps <= kPi)) fail(ErrorKind::invalid_argument, "eps must lie in (0, pi]");
  if (k < 2) fail(ErrorKind::invalid_argument, "counterexample smoothness must be >= 2");
  const SpectralDensity s = make_bump(-kPi, -kPi + eps, k);
  return BandLimitedFunction(scale(s, 1.0 / s.integral().real()));
}

struct CounterexampleRow {
  double eps = 0.0;
  NormReport envelope;
  NormReport e1;
  double ratio = 0.0;
  double ratio_error = 0.0;
};

inline CounterexampleRow counterexample_row(double eps, double p, int k, const QuadratureSpec& quad) {
  CounterexampleRow row;
  row.eps = eps;
  const BandLimitedFunction f = counterexample_family(eps, k);
  row.envelope = envelope_integral_norm(f, EnvelopeParams{p, 1.0}, quad);
  row.e1 = ep_norm(f, 1.0, quad);
  row.ratio = row.envelope.value / row.e1.value;
  row.ratio_error = row.ratio * (row.envelope.quadrature_error_estimate / row.envelope.value +
                                 row.e1.quadrature_error_estimate / row.e1.value);
  return row;
}

inline double counterexample_ratio(double eps, double p, const QuadratureSpec& quad, int k = 3) {
  return counterexample_row(eps, p, k, quad).ratio;
}

// ---------------------------------------------------------------------------------------
// Atomic decompositions

struct Dictionary {
  std::vector<BandLimitedFunction> atoms;  // each of unit E^p quasi-norm
  std::vector<std::string> names;
  double p = 0.75;
  double q = 1.0;
  double grid_half_width = 400.0;  // residual grid [-L, L]
  double grid_spacing = 0.125;

  std::size_t size() const { return atoms.size(); }

  std::vector<double> grid() const {
    const int n = static_cast<int>(std::floor(grid_half_width / grid_spacing));
    std::vector<double> xs;
    xs.reserve(2 * n + 1);
    for (int i = -n; i <= n; ++i) xs.push_back(i * grid_spacing);
    return xs;
  }

  void validate() const {
    if (atoms.empty()) fail(ErrorKind::invalid_argument, "dictionary is empty");
    if (atoms.size() != names.size()) fail(ErrorKind::invalid_argument, "dictionary names do not match atoms");
    EnvelopeParams{p, q}.validate();
    if (!(grid_half_width > 0.0 && grid_spacing > 0.0)) fail(ErrorKind::invalid_argument, "dictionary grid invalid");
    for (const auto& a : atoms)
      if (exp_type(a) > kPi + 1e-12) fail(ErrorKind::not_in_ep, "dictionary atom of type > pi");
  }

  /// Appends s scaled to unit E^p quasi-norm.
  void add_atom(const std::string& name, const SpectralDensity& s, const QuadratureSpec& quad) {
    const double n = ep_norm(BandLimitedFunction(s), p, quad).value;
    atoms.emplace_back(scale(s, 1.0 / n));
    names.push_back(name);
  }
};

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Bumps of several widths, spectral centres and orders, and spectrally shifted Fejer
/// kernels (dropped when p <= 1/2, where they are not p-integrable).
inline Dictionary make_dictionary(double p, double q, const QuadratureSpec& quad) {
  Dictionary d;
  d.p = p;
  d.q = q;
  auto bump = [&](double width, int k) {
    const int count = static_cast<int>(std::lround(2.0 * kTwoPi / width)) - 1;
    for (int i = 0; i < count; ++i) {
      const double lo = -kPi + 0.5 * width * i;
      const std::string name = "bump(" + format_real(lo) + "," + format_real(lo + width) + "," + std::to_string(k) + ")";
      d.add_atom(name, make_bump(lo, lo + width, k), quad);
    }
  };
  for (double w : {kTwoPi, kPi, kPi / 2, kPi / 4}) bump(w, 3);
  for (double w : {kTwoPi, kPi}) bump(w, 5);
  if (2.0 * p > 1.0) {
    for (double a : {kPi / 2, kPi / 4, kPi / 8}) {
      const int reach = static_cast<int>(std::lround((kPi - 2.0 * a) / a));
      for (int i = -reach; i <= reach; ++i) {
        const double shift = i * a;
        const std::string name = "fejer(" + format_real(a) + ")@" + format_real(shift);
        d.add_atom(name, modulate(make_fejer(a), shift), quad);
      }
    }
  }
  return d;
}

struct DecompositionResult {
  std::vector<std::pair<std::string, double>> lambdas;  // nonzero coefficients with atom labels
  std::vector<std::size_t> atom_indices;
  double objective = 0.0;  // (sum lambda^q)^{1/q}
  double residual = 0.0;   // sup-norm reconstruction error on the grid
  double tolerance = 0.0;
  int iterations = 0;
  bool upper_bound = true;
  std::vector<std::string> notes;
};

inline nlohmann::json to_json(const DecompositionResult& r) {
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& [atom, value] : r.lambdas) lam.push_back({{"atom", atom}, {"value", value}});
  return {{"objective", r.objective}, {"lambdas", lam}, {"residual", r.residual}};
}

namespace detail {

struct AtomTable {
  std::vector<double> xs;
  std::vector<std::vector<cplx>> values;  // values[atom][grid]
};

inline AtomTable tabulate(const Dictionary& dict) {
  AtomTable t;
  t.xs = dict.grid();
  for (const auto& a : dict.atoms) t.values.push_back(eval_nodes(a, t.xs, 0.0));
  return t;
}

inline const std::array<cplx, 4>& rotations() {
  static const std::array<cplx, 4> r{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  return r;
}

}  // namespace detail

/// Upper bound for the envelope quasi-norm of f from decompositions f = sum lambda_i g_i
/// over unit atoms g_i and their rotations by 1, i, -1, -i, matched on the grid to
/// 1e-6 of sup|f|. q = 1 is a linear program; q < 1 reweights it ten times.
inline DecompositionResult minkowski_norm(const BandLimitedFunction& f, const Dictionary& dict,
                                          const QuadratureSpec& quad) {
  dict.validate();
  quad.validate();
  require_type_pi(f);
  DecompositionResult out;
  out.notes.push_back("upper bound over a finite dictionary");
  if (f.is_zero()) return out;

  const detail::AtomTable table = detail::tabulate(dict);
  const std::vector<cplx> target = eval_nodes(f, table.xs, 0.0);
  double fmax = 0.0;
  for (const cplx& v : target) fmax = std::max(fmax, std::abs(v));
  const double tau = 1e-6 * fmax;
  out.tolerance = tau;

  const std::size_t na = dict.size();
  const std::size_t n = 4 * na;
  const std::size_t ng = table.xs.size();
  auto column = [&](std::size_t c, std::size_t g) { return detail::rotations()[c % 4] * table.values[c / 4][g]; };
  auto residual_at = [&](const std::vector<double>& lam, std::size_t g) {
    cplx acc = -target[g];
    for (std::size_t c = 0; c < n; ++c)
      if (lam[c] != 0.0) acc += lam[c] * column(c, g);
    return std::max(std::abs(acc.real()), std::abs(acc.imag()));
  };

  // Active grid rows: start with a coarse subset and add the worst violators.
  std::vector<std::size_t> active;
  const std::size_t stride = std::max<std::size_t>(1, ng / (3 * n));
  for (std::size_t g = 0; g < ng; g += stride) active.push_back(g);

  auto solve_weighted = [&](const std::vector<double>& cost) {
    while (true) {
      const std::size_t m = 4 * active.size();
      std::vector<double> A(m * n), b(m);
      for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t g = active[k];
        const cplx tv = target[g];
        for (std::size_t c = 0; c < n; ++c) {
          const cplx a = column(c, g);
          A[(4 * k + 0) * n + c] = a.real();
          A[(4 * k + 1) * n + c] = -a.real();
          A[(4 * k + 2) * n + c] = a.imag();
          A[(4 * k + 3) * n + c] = -a.imag();
        }
        b[4 * k + 0] = tau + tv.real();
        b[4 * k + 1] = tau - tv.real();
        b[4 * k + 2] = tau + tv.imag();
        b[4 * k + 3] = tau - tv.imag();
      }
      lp::DualSimplex solver(A, b, cost);
      lp::Solution sol = solver.solve();
      out.iterations += sol.iterations;
      if (sol.status != lp::Status::optimal) return std::pair{sol, false};
      std::vector<std::pair<double, std::size_t>> viol;
      for (std::size_t g = 0; g < ng; ++g) {
        const double r = residual_at(sol.x, g);
        if (r > 1.001 * tau) viol.emplace_back(-r, g);
      }
      if (viol.empty()) return std::pair{sol, true};
      std::sort(viol.begin(), viol.end());
      const std::size_t add = std::min<std::size_t>(viol.size(), std::max<std::size_t>(16, n / 4));
      for (std::size_t i = 0; i < add; ++i) active.push_back(viol[i].second);
      std::sort(active.begin(), active.end());
    }
  };

  auto [sol, ok] = solve_weighted(std::vector<double>(n, 1.0));
  if (!ok) {
    // Smallest achievable sup residual on the active rows: min t with |A lam - f| <= t.
    const std::size_t m = 4 * active.size();
    // Tiny costs on lambda keep the program from stalling on degenerate ties.
    std::vector<double> A(m * (n + 1), 0.0), b(m), cost(n + 1, 1e-9);
    cost[n] = 1.0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t g = active[k];
      for (std::size_t c = 0; c < n; ++c) {
        const cplx a = column(c, g);
        A[(4 * k + 0) * (n + 1) + c] = a.real();
        A[(4 * k + 1) * (n + 1) + c] = -a.real();
        A[(4 * k + 2) * (n + 1) + c] = a.imag();
        A[(4 * k + 3) * (n + 1) + c] = -a.imag();
      }
      for (std::size_t r = 0; r < 4; ++r) A[(4 * k + r) * (n + 1) + n] = -1.0;
      b[4 * k + 0] = target[g].real();
      b[4 * k + 1] = -target[g].real();
      b[4 * k + 2] = target[g].imag();
      b[4 * k + 3] = -target[g].imag();
    }
    const lp::Solution floor = lp::DualSimplex(A, b, cost).solve();
    const std::string best = floor.status == lp::Status::optimal ? format_real(floor.x[n]) : "unknown";
    fail(ErrorKind::no_decomposition,
         "no decomposition within tolerance " + format_real(tau) + "; best grid residual " + best);
  }
  std::vector<double> lam = sol.x;
  const double q = dict.q;
  if (q < 1.0) {
    out.notes.push_back("q < 1: reweighted l1, a local minimum");
    auto objective = [&](const std::vector<double>& l) {
      double s = 0.0;
      for (double v : l) s += std::pow(v, q);
      return std::pow(s, 1.0 / q);
    };
    double best = objective(lam);
    for (int it = 0; it < 10; ++it) {
      double lmax = 0.0;
      for (double v : lam) lmax = std::max(lmax, v);
      const double delta = 1e-3 * lmax;
      std::vector<double> cost(n);
      for (std::size_t c = 0; c < n; ++c) cost[c] = std::pow(lam[c] + delta, q - 1.0);
      auto [s2, ok2] = solve_weighted(cost);
      if (!ok2) break;
      const double val = objective(s2.x);
      if (val < best) {
        best = val;
        lam = s2.x;
      } else {
        break;
      }
    }
  }

  double resid = 0.0;
  for (std::size_t g = 0; g < ng; ++g) resid = std::max(resid, residual_at(lam, g));
  out.residual = resid;
  double sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (lam[c] <= 0.0) continue;
    static const char* suffix[4] = {"", "*i", "*-1", "*-i"};
    out.lambdas.emplace_back(dict.names[c / 4] + suffix[c % 4], lam[c]);
    out.atom_indices.push_back(c / 4);
    sum += std::pow(lam[c], q);
  }
  out.objective = std::pow(sum, 1.0 / q);
  return out;
}

}  // namespace pwenv
