#pragma once

// Evaluation of f(z) = int s(t) e^{izt} dt for piecewise-polynomial densities.
//
// Two routes:
//  * eval_point: composite Gauss-Legendre over each piece, panel count driven by |z|.
//  * BandLimitedFunction::operator(): for large |z| the exact breakpoint expansion
//
//        f(z) = sum_j e^{i z t_j} sum_m beta_{j,m} (iz)^{-(m+1)},
//        beta_{j,m} = (-1)^{m+1} (s^{(m)}(t_j+) - s^{(m)}(t_j-)),
//
//    obtained by integrating each piece by parts to exhaustion; jumps of order <= the
//    declared smoothness are exactly zero and are dropped. Small |z| falls back to a
//    per-piece closed form or Gauss-Legendre.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pwenv/error.hpp"
#include "pwenv/polynomial.hpp"
#include "pwenv/quadrature.hpp"
#include "pwenv/spectrum.hpp"

namespace pwenv {

/// Contribution of one breakpoint to the large-|z| expansion.
struct Breakpoint {
  double t = 0.0;
  std::vector<double> jump_re;  // J_m = s^{(m)}(t+) - s^{(m)}(t-), m = 0..D
  std::vector<double> jump_im;
  cplx beta(std::size_t m) const {
    const double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return sign * cplx(m < jump_re.size() ? jump_re[m] : 0.0, m < jump_im.size() ? jump_im[m] : 0.0);
  }
};

namespace detail {

// sum_i w_i P(s_i) e^{w t_i} over one piece, with n panels of a 20-point rule.
inline cplx piece_gauss(const Piece& p, cplx w, int panels) {
  const Rule& gl = gauss_legendre(20);
  cplx acc{};
  const double len = p.length();
  for (int k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) / panels;
    const double h = 1.0 / panels;
    cplx part{};
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double s = a + 0.5 * h * (1.0 + gl.nodes[i]);
      part += gl.weights[i] * p.at_local(s) * std::exp(w * (p.lo + s * len));
    }
    acc += 0.5 * h * part;
  }
  return acc * len;
}

inline int gauss_panels(const Piece& p, cplx z, double per_panel = 2.0) {
  const double reach = std::max(std::abs(z.real()), std::abs(z.imag())) * p.length();
  return std::max(1, static_cast<int>(std::ceil(reach / per_panel)));
}

}  // namespace detail

/// Direct quadrature route: int s(t) e^{izt} dt by Gauss-Legendre panels with at least
/// ten nodes per period of e^{ixt} and per e-fold of e^{-yt}.
inline cplx eval_point_density(const SpectralDensity& s, cplx z) {
  const cplx w(-z.imag(), z.real());  // iz
  cplx acc{};
  for (const Piece& p : s.pieces()) acc += detail::piece_gauss(p, w, detail::gauss_panels(p, z));
  return acc;
}

class BandLimitedFunction {
 public:
  BandLimitedFunction() = default;

  explicit BandLimitedFunction(SpectralDensity density) : density_(std::move(density)) { analyse(); }

  const SpectralDensity& density() const { return density_; }
  bool is_zero() const { return density_.is_zero(); }

  /// max(|a|, |b|) of the support.
  double type_bound() const {
    const Interval sup = density_.support();
    return std::max(std::abs(sup.lo), std::abs(sup.hi));
  }

  /// Guaranteed algebraic decay |f(x)| <= C (1+|x|)^{-d} on the real line: the order of
  /// the first non-vanishing derivative jump plus one (at least smoothness + 1).
  int decay_order() const { return decay_order_; }

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  /// |z| beyond which the breakpoint expansion is used.
  double expansion_radius() const { return expansion_radius_; }

  /// Smallest piece length; sets the x-scale where the asymptotic regime begins.
  double min_piece_length() const { return min_piece_; }
  std::size_t max_degree() const { return density_.max_degree(); }

  cplx operator()(cplx z) const {
    if (density_.is_zero()) return {};
    if (std::abs(z) >= expansion_radius_) return expansion(z);
    const cplx w(-z.imag(), z.real());
    const double aw = std::abs(w);
    const cplx winv = aw > 0.0 ? 1.0 / w : cplx{};
    cplx acc{};
    for (std::size_t i = 0; i < ends_.size(); ++i) {
      const PieceEnds& pe = ends_[i];
      const Piece& p = density_.pieces()[i];
      if (aw * p.length() > 0.5) {
        const cplx e_hi = std::exp(w * p.hi), e_lo = std::exp(w * p.lo);
        const double m_hi = std::abs(e_hi), m_lo = std::abs(e_lo);
        cplx part{}, wp = winv;
        double amp = 0.0, awp = 1.0 / aw;
        for (std::size_t m = 0; m < pe.hi.size(); ++m) {
          part += (pe.hi[m] * e_hi - pe.lo[m] * e_lo) * wp;
          amp += (std::abs(pe.hi[m]) * m_hi + std::abs(pe.lo[m]) * m_lo) * awp;
          wp *= winv;
          awp /= aw;
        }
        if (amp <= kCancellation * pe.l1 * std::max(m_hi, m_lo)) {
          acc += part;
          continue;
        }
      }
      acc += detail::piece_gauss(p, w, detail::gauss_panels(p, z, 8.0));
    }
    return acc;
  }

  /// Exact breakpoint sum; valid for every z != 0, well conditioned for |z| large.
  cplx expansion(cplx z) const {
    const cplx iz(-z.imag(), z.real());
    const cplx inv = 1.0 / iz;
    cplx acc{};
    for (const ExpansionTerm& e : terms_) {
      cplx inner{};
      for (std::size_t k = e.beta.size(); k-- > 0;) inner = inner * inv + e.beta[k];
      cplx lead = inv;
      for (int m = 0; m < e.first; ++m) lead *= inv;
      acc += std::exp(iz * e.t) * lead * inner;
    }
    return acc;
  }

  /// Leading-order amplitudes a_j = beta_{j,d-1}: f(z) ~ (iz)^{-d} sum_j a_j e^{izt_j}.
  std::vector<std::pair<double, cplx>> leading_terms() const {
    std::vector<std::pair<double, cplx>> out;
    const std::size_t m = static_cast<std::size_t>(decay_order_ - 1);
    for (const Breakpoint& b : breakpoints_) {
      const cplx a = b.beta(m);
      if (a != cplx{}) out.emplace_back(b.t, a);
    }
    return out;
  }

  static constexpr double kByPartsFactor = 3.0;
  /// Largest tolerated ratio of by-parts term sizes to the piece mass.
  static constexpr double kCancellation = 64.0;

 private:
  // Endpoint data of the by-parts closed form: int P e^{wt} = sum_m (hi_m e^{w t_hi} - lo_m e^{w t_lo}) / w^{m+1}.
  struct PieceEnds {
    std::vector<cplx> hi, lo;
    double l1 = 0.0;
  };

  void analyse() {
    breakpoints_.clear();
    terms_.clear();
    ends_.clear();
    for (const Piece& p : density_.pieces()) {
      PieceEnds pe;
      const std::size_t n = std::max(p.re.size(), p.im.size());
      poly::Coeffs rh = poly::taylor_at(p.re, 1.0), ih = poly::taylor_at(p.im, 1.0);
      poly::Coeffs rl = poly::taylor_at(p.re, 0.0), il = poly::taylor_at(p.im, 0.0);
      rh.resize(n, 0.0), ih.resize(n, 0.0), rl.resize(n, 0.0), il.resize(n, 0.0);
      double c = 1.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (m > 0) c *= -static_cast<double>(m) / p.length();
        pe.hi.emplace_back(c * rh[m], c * ih[m]);
        pe.lo.emplace_back(c * rl[m], c * il[m]);
      }
      const Rule& gl = gauss_legendre(20);
      for (std::size_t i = 0; i < gl.size(); ++i) pe.l1 += 0.5 * gl.weights[i] * std::abs(p.at_local(0.5 * (1.0 + gl.nodes[i])));
      pe.l1 *= p.length();
      ends_.push_back(std::move(pe));
    }
    decay_order_ = density_.smoothness() + 1;
    if (density_.is_zero()) {
      expansion_radius_ = 0.0;
      min_piece_ = 0.0;
      return;
    }
    const auto& pieces = density_.pieces();
    std::size_t dmax = 0;
    min_piece_ = pieces.front().length();
    for (const Piece& p : pieces) {
      dmax = std::max(dmax, p.degree());
      min_piece_ = std::min(min_piece_, p.length());
    }
    const std::size_t nterms = dmax + 1;

    // One-sided derivative values s^{(m)}(t) in the t variable.
    auto derivs = [&](const Piece& p, double s, poly::Coeffs const& c) {
      poly::Coeffs t = poly::taylor_at(c, s);
      t.resize(nterms, 0.0);
      double fact = 1.0, lpow = 1.0;
      for (std::size_t m = 0; m < nterms; ++m) {
        if (m > 0) fact *= static_cast<double>(m);
        t[m] *= fact * lpow;
        lpow /= p.length();
      }
      return t;
    };

    std::vector<double> ts;
    for (const Piece& p : pieces) ts.insert(ts.end(), {p.lo, p.hi});
    ts = detail::merged_breaks(std::move(ts));

    std::vector<double> scale(nterms, 0.0);
    struct Sided {
      poly::Coeffs lre, lim, rre, rim;
    };
    std::vector<Sided> sided(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
      Sided sd{poly::Coeffs(nterms, 0.0), poly::Coeffs(nterms, 0.0), poly::Coeffs(nterms, 0.0),
               poly::Coeffs(nterms, 0.0)};
      for (const Piece& p : pieces) {
        if (std::abs(p.hi - ts[j]) <= kBreakTol) {
          sd.lre = derivs(p, 1.0, p.re);
          sd.lim = derivs(p, 1.0, p.im);
        }
        if (std::abs(p.lo - ts[j]) <= kBreakTol) {
          sd.rre = derivs(p, 0.0, p.re);
          sd.rim = derivs(p, 0.0, p.im);
        }
      }
      for (std::size_t m = 0; m < nterms; ++m)
        scale[m] = std::max({scale[m], std::abs(sd.lre[m]), std::abs(sd.lim[m]), std::abs(sd.rre[m]),
                             std::abs(sd.rim[m])});
      sided[j] = std::move(sd);
    }

    int first_nonzero = static_cast<int>(nterms);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      Breakpoint b;
      b.t = ts[j];
      b.jump_re.assign(nterms, 0.0);
      b.jump_im.assign(nterms, 0.0);
      bool any = false;
      for (std::size_t m = 0; m < nterms; ++m) {
        if (static_cast<int>(m) <= density_.smoothness()) continue;
        const Sided& sd = sided[j];
        auto jump = [&](double r, double l) {
          const double d = r - l;
          const double tiny = std::max(1e-11 * std::max(std::abs(r), std::abs(l)), 1e-13 * scale[m]);
          return std::abs(d) <= tiny ? 0.0 : d;
        };
        b.jump_re[m] = jump(sd.rre[m], sd.lre[m]);
        b.jump_im[m] = jump(sd.rim[m], sd.lim[m]);
        if (b.jump_re[m] != 0.0 || b.jump_im[m] != 0.0) {
          any = true;
          first_nonzero = std::min(first_nonzero, static_cast<int>(m));
        }
      }
      if (any) breakpoints_.push_back(std::move(b));
    }
    for (const Breakpoint& b : breakpoints_) {
      ExpansionTerm e{b.t, 0, {}};
      std::size_t last = 0;
      bool seen = false;
      for (std::size_t m = 0; m < nterms; ++m)
        if (b.beta(m) != cplx{}) {
          if (!seen) e.first = static_cast<int>(m);
          seen = true;
          last = m;
        }
      for (std::size_t m = static_cast<std::size_t>(e.first); m <= last; ++m) e.beta.push_back(b.beta(m));
      terms_.push_back(std::move(e));
    }
    decay_order_ = std::max(decay_order_, first_nonzero + 1);
    expansion_radius_ = kByPartsFactor * static_cast<double>(nterms) / min_piece_;
  }

  struct ExpansionTerm {
    double t;
    int first;               // lowest order with a nonzero jump
    std::vector<cplx> beta;  // beta_first .. beta_last
  };

  SpectralDensity density_;
  std::vector<Breakpoint> breakpoints_;
  std::vector<ExpansionTerm> terms_;
  std::vector<PieceEnds> ends_;
  int decay_order_ = 1;
  double expansion_radius_ = 0.0;
  double min_piece_ = 0.0;
};

/// Gauss-Legendre route; every z is valid.
inline cplx eval_point(const BandLimitedFunction& f, cplx z) { return eval_point_density(f.density(), z); }

struct EvalGrid {
  double center = 0.0;
  double spacing = 1.0;
  int count = 2;
  double y = 0.0;

  double node(int j) const { return center + (j - 0.5 * (count - 1)) * spacing; }
  void validate() const {
    if (count < 2 || !(spacing > 0.0)) fail(ErrorKind::invalid_argument, "EvalGrid needs count >= 2 and spacing > 0");
  }
};

/// f at arbitrary real abscissae on the line Im z = y.
inline std::vector<cplx> eval_nodes(const BandLimitedFunction& f, const std::vector<double>& xs, double y) {
  std::vector<cplx> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(cplx(xs[i], y));
  return out;
}

/// {f(x_j + iy)} on a uniform grid.
inline std::vector<cplx> eval_line(const BandLimitedFunction& f, const EvalGrid& grid) {
  grid.validate();
  std::vector<cplx> out(grid.count);
  for (int j = 0; j < grid.count; ++j) out[j] = f(cplx(grid.node(j), grid.y));
  return out;
}

inline double exp_type(const BandLimitedFunction& f) { return f.type_bound(); }

}  // namespace pwenv
