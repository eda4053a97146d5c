#pragma once

// Compactly supported piecewise-polynomial spectral densities s(t) on [-2pi, 2pi].
//
// A density is a sorted list of non-overlapping pieces. Each piece carries real and
// imaginary coefficient lists in the local variable sigma = (t - lo) / (hi - lo), so
// translation of the spectrum never touches the coefficients. Gaps between pieces are
// zero. The represented band-limited function is f(z) = int s(t) e^{izt} dt.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pwenv/error.hpp"
#include "pwenv/polynomial.hpp"
#include "pwenv/quadrature.hpp"

namespace pwenv {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Breakpoints closer than this are identified.
inline constexpr double kBreakTol = 1e-13;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  poly::Coeffs re;
  poly::Coeffs im;

  double length() const { return hi - lo; }
  double local(double t) const { return (t - lo) / (hi - lo); }
  cplx at_local(double s) const { return {poly::eval(re, s), poly::eval(im, s)}; }
  std::size_t degree() const {
    const std::size_t n = std::max(re.size(), im.size());
    return n == 0 ? 0 : n - 1;
  }
  /// Copy of this piece restricted to [a, b] with coefficients in the new local variable.
  Piece restricted(double a, double b) const {
    const double s0 = local(a);
    const double r = (b - a) / length();
    return Piece{a, b, poly::reparametrize(re, s0, r), poly::reparametrize(im, s0, r)};
  }
};

class SpectralDensity {
 public:
  SpectralDensity() = default;

  SpectralDensity(std::vector<Piece> pieces, int smoothness) : pieces_(std::move(pieces)), smoothness_(smoothness) {
    if (smoothness_ < 0) fail(ErrorKind::invalid_argument, "smoothness order must be >= 0");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (!(p.hi > p.lo)) fail(ErrorKind::invalid_argument, "piece with empty interval");
      if (p.lo < -kTwoPi - 1e-12 || p.hi > kTwoPi + 1e-12)
        fail(ErrorKind::invalid_argument, "spectral support must lie inside [-2pi, 2pi]");
      if (i > 0 && p.lo < pieces_[i - 1].hi - kBreakTol) fail(ErrorKind::invalid_argument, "overlapping pieces");
    }
    pieces_.erase(std::remove_if(pieces_.begin(), pieces_.end(),
                                 [](const Piece& p) { return poly::is_zero(p.re) && poly::is_zero(p.im); }),
                  pieces_.end());
  }

  static SpectralDensity zero() { return {}; }

  const std::vector<Piece>& pieces() const { return pieces_; }
  int smoothness() const { return smoothness_; }
  bool is_zero() const { return pieces_.empty(); }

  /// Closed support hull [a, b]; empty interval for the zero density.
  Interval support() const {
    if (pieces_.empty()) return {0.0, 0.0};
    return {pieces_.front().lo, pieces_.back().hi};
  }

  bool is_real() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return poly::is_zero(p.im); });
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const Piece& p : pieces_) d = std::max(d, p.degree());
    return d;
  }

  cplx operator()(double t) const {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (t < p.lo) return {};
      if (t < p.hi || (t == p.hi && (i + 1 == pieces_.size() || pieces_[i + 1].lo > t)))
        return p.at_local(p.local(t));
    }
    return {};
  }

  /// int s(t) dt, exact.
  cplx integral() const {
    cplx acc{};
    for (const Piece& p : pieces_) {
      cplx m{};
      for (std::size_t i = 0; i < p.re.size(); ++i) m += p.re[i] / static_cast<double>(i + 1);
      for (std::size_t i = 0; i < p.im.size(); ++i) m += cplx(0.0, p.im[i] / static_cast<double>(i + 1));
      acc += p.length() * m;
    }
    return acc;
  }

  /// int |s(t)| dt by composite Gauss-Legendre.
  double l1_mass() const {
    const Rule& gl = gauss_legendre(32);
    double acc = 0.0;
    for (const Piece& p : pieces_) {
      constexpr int kSub = 8;
      for (int j = 0; j < kSub; ++j) {
        const double a = static_cast<double>(j) / kSub;
        const double h = 1.0 / kSub;
        for (std::size_t i = 0; i < gl.size(); ++i) {
          const double s = a + 0.5 * h * (1.0 + gl.nodes[i]);
          acc += 0.5 * h * gl.weights[i] * std::abs(p.at_local(s)) * p.length();
        }
      }
    }
    return acc;
  }

  /// Max |s| over a uniform sample of each piece (endpoints included).
  double sup_abs(int samples_per_piece = 64) const {
    double m = 0.0;
    for (const Piece& p : pieces_)
      for (int i = 0; i <= samples_per_piece; ++i)
        m = std::max(m, std::abs(p.at_local(static_cast<double>(i) / samples_per_piece)));
    return m;
  }

  /// Max |s| sampled over the parts of the pieces lying outside [lo, hi].
  double sup_abs_outside(double lo, double hi, int samples = 64) const {
    double m = 0.0;
    for (const Piece& p : pieces_) {
      for (int i = 0; i <= samples; ++i) {
        const double s = static_cast<double>(i) / samples;
        const double t = p.lo + s * p.length();
        if (t < lo - kBreakTol || t > hi + kBreakTol) m = std::max(m, std::abs(p.at_local(s)));
      }
    }
    return m;
  }

 private:
  std::vector<Piece> pieces_;
  int smoothness_ = 0;
};

// ---------------------------------------------------------------------------------------
// Construction

/// Monomial coefficients of the degree-(2k+1) smoothstep S_k on [0, 1].
inline poly::Coeffs smoothstep_coeffs(int k) {
  if (k < 0) fail(ErrorKind::invalid_argument, "smoothstep order must be >= 0");
  auto binom = [](int n, int r) {
    double b = 1.0;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
  };
  poly::Coeffs c(2 * k + 2, 0.0);
  for (int n = 0; n <= k; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    c[k + n + 1] = sign * binom(k + n, n) * binom(2 * k + 1, k - n);
  }
  return c;
}

/// S_k(t), clamped to 0 for t <= 0 and 1 for t >= 1.
inline double smoothstep(int k, double t) {
  if (k < 0) fail(ErrorKind::invalid_argument, "smoothstep order must be >= 0");
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return poly::eval(smoothstep_coeffs(k), t);
}

namespace detail {
inline void check_interval(double a, double b) {
  if (!(a < b)) fail(ErrorKind::invalid_argument, "interval must satisfy a < b");
  if (a < -kTwoPi - 1e-12 || b > kTwoPi + 1e-12)
    fail(ErrorKind::invalid_argument, "interval must lie inside [-2pi, 2pi]");
}
inline Piece real_piece(double lo, double hi, poly::Coeffs re) { return Piece{lo, hi, std::move(re), {}}; }
inline poly::Coeffs ramp_up(int k) { return smoothstep_coeffs(k); }
inline poly::Coeffs ramp_down(int k) { return poly::reparametrize(smoothstep_coeffs(k), 1.0, -1.0); }
}  // namespace detail

/// Nonnegative C^k bump supported on [a, b], equal to 1 on the middle third.
inline SpectralDensity make_bump(double a, double b, int k) {
  detail::check_interval(a, b);
  if (k < 0) fail(ErrorKind::invalid_argument, "bump smoothness must be >= 0");
  const double l = (b - a) / 3.0;
  std::vector<Piece> pieces{
      detail::real_piece(a, a + l, detail::ramp_up(k)),
      detail::real_piece(a + l, b - l, {1.0}),
      detail::real_piece(b - l, b, detail::ramp_down(k)),
  };
  return SpectralDensity(std::move(pieces), k);
}

/// Triangle density of height 1/(2a) on [-2a, 2a]; f(x) = (sin(ax)/(ax))^2.
inline SpectralDensity make_fejer(double a) {
  if (!(a > 0.0) || a > kPi / 2.0 + 1e-15) fail(ErrorKind::invalid_argument, "Fejer parameter must be in (0, pi/2]");
  const double h = 1.0 / (2.0 * a);
  std::vector<Piece> pieces{
      detail::real_piece(-2.0 * a, 0.0, {0.0, h}),
      detail::real_piece(0.0, 2.0 * a, {h, -h}),
  };
  return SpectralDensity(std::move(pieces), 0);
}

struct PartitionOfUnity {
  SpectralDensity phi_hat;
  SpectralDensity psi_hat;
  int overlap_smoothness = 0;
};

/// Spectral partition with supp phi_hat = [-2pi, pi], supp psi_hat = [0, 2pi] and
/// phi_hat + psi_hat = 1 on [-pi, pi]. Both are C^k; the overlap ramp lives on [0, pi].
inline PartitionOfUnity make_partition(int k) {
  if (k < 1) fail(ErrorKind::invalid_argument, "partition smoothness must be >= 1");
  const double margin = kPi / 2.0;
  const poly::Coeffs up = detail::ramp_up(k);
  const poly::Coeffs down = poly::add({1.0}, up, -1.0);  // 1 - S_k, the exact complement of `up`
  std::vector<Piece> phi{
      detail::real_piece(-kTwoPi, -kTwoPi + margin, detail::ramp_up(k)),
      detail::real_piece(-kTwoPi + margin, 0.0, {1.0}),
      detail::real_piece(0.0, kPi, down),
  };
  std::vector<Piece> psi{
      detail::real_piece(0.0, kPi, up),
      detail::real_piece(kPi, kTwoPi - margin, {1.0}),
      detail::real_piece(kTwoPi - margin, kTwoPi, detail::ramp_down(k)),
  };
  return {SpectralDensity(std::move(phi), k), SpectralDensity(std::move(psi), k), k};
}

// ---------------------------------------------------------------------------------------
// Transformations

/// Shift of the spectrum by a; the function becomes e^{iaz} f(z).
inline SpectralDensity modulate(const SpectralDensity& s, double a) {
  if (s.is_zero()) return s;
  const Interval sup = s.support();
  if (sup.lo + a < -kTwoPi - 1e-12 || sup.hi + a > kTwoPi + 1e-12)
    fail(ErrorKind::invalid_argument, "modulation moves the spectrum outside [-2pi, 2pi]");
  std::vector<Piece> out;
  out.reserve(s.pieces().size());
  for (const Piece& p : s.pieces()) {
    Piece q = p;
    q.lo = std::clamp(p.lo + a, -kTwoPi, kTwoPi);
    q.hi = std::clamp(p.hi + a, -kTwoPi, kTwoPi);
    // Snap values that land within round-off of 0 so breakpoints stay shared.
    if (std::abs(q.lo) < kBreakTol) q.lo = 0.0;
    if (std::abs(q.hi) < kBreakTol) q.hi = 0.0;
    out.push_back(std::move(q));
  }
  return SpectralDensity(std::move(out), s.smoothness());
}

inline SpectralDensity scale(const SpectralDensity& s, cplx c) {
  std::vector<Piece> out;
  for (const Piece& p : s.pieces()) {
    Piece q{p.lo, p.hi, {}, {}};
    const std::size_t n = std::max(p.re.size(), p.im.size());
    q.re.assign(n, 0.0);
    q.im.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = i < p.re.size() ? p.re[i] : 0.0;
      const double m = i < p.im.size() ? p.im[i] : 0.0;
      q.re[i] = c.real() * r - c.imag() * m;
      q.im[i] = c.real() * m + c.imag() * r;
    }
    if (poly::is_zero(q.im)) q.im.clear();
    out.push_back(std::move(q));
  }
  return SpectralDensity(std::move(out), s.smoothness());
}

/// conj(s(-t)): the density of conj(f(conj z)), mapping the lower half-plane to the upper.
inline SpectralDensity reflect(const SpectralDensity& s) {
  std::vector<Piece> out;
  for (const Piece& p : s.pieces()) {
    Piece q{-p.hi, -p.lo, poly::reparametrize(p.re, 1.0, -1.0), poly::scaled(poly::reparametrize(p.im, 1.0, -1.0), -1.0)};
    if (q.lo == -0.0) q.lo = 0.0;
    if (q.hi == -0.0) q.hi = 0.0;
    out.push_back(std::move(q));
  }
  return SpectralDensity(std::move(out), s.smoothness());
}

namespace detail {

inline std::vector<double> merged_breaks(std::vector<double> b) {
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double v : b)
    if (out.empty() || v - out.back() > kBreakTol) out.push_back(v);
  return out;
}

inline const Piece* covering(const SpectralDensity& s, double a, double b) {
  for (const Piece& p : s.pieces())
    if (p.lo <= a + kBreakTol && p.hi >= b - kBreakTol) return &p;
  return nullptr;
}

inline Piece restrict_piece(const Piece& p, double a, double b) {
  if (std::abs(a - p.lo) <= kBreakTol && std::abs(b - p.hi) <= kBreakTol) {
    Piece q = p;
    q.lo = a;
    q.hi = b;
    return q;
  }
  return p.restricted(a, b);
}

}  // namespace detail

/// Elementwise combination over the common refinement of both breakpoint sets.
template <class Op>
SpectralDensity combine(const SpectralDensity& s, const SpectralDensity& m, Op&& op, int smoothness) {
  std::vector<double> b;
  for (const Piece& p : s.pieces()) b.insert(b.end(), {p.lo, p.hi});
  for (const Piece& p : m.pieces()) b.insert(b.end(), {p.lo, p.hi});
  b = detail::merged_breaks(std::move(b));
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double lo = b[i];
    const double hi = b[i + 1];
    const Piece* ps = detail::covering(s, lo, hi);
    const Piece* pm = detail::covering(m, lo, hi);
    std::optional<Piece> rs, rm;
    if (ps) rs = detail::restrict_piece(*ps, lo, hi);
    if (pm) rm = detail::restrict_piece(*pm, lo, hi);
    std::optional<Piece> r = op(rs, rm);
    if (r) {
      r->lo = lo;
      r->hi = hi;
      out.push_back(std::move(*r));
    }
  }
  return SpectralDensity(std::move(out), smoothness);
}

inline SpectralDensity add(const SpectralDensity& s, const SpectralDensity& m) {
  if (s.is_zero()) return m;
  if (m.is_zero()) return s;
  return combine(
      s, m,
      [](const std::optional<Piece>& a, const std::optional<Piece>& b) -> std::optional<Piece> {
        if (a && b) return Piece{0, 0, poly::add(a->re, b->re), poly::add(a->im, b->im)};
        if (a) return a;
        return b;
      },
      std::min(s.smoothness(), m.smoothness()));
}

/// Pointwise product; support is the intersection of the supports.
inline SpectralDensity multiply_pointwise(const SpectralDensity& s, const SpectralDensity& m) {
  if (s.is_zero() || m.is_zero()) return SpectralDensity::zero();
  return combine(
      s, m,
      [](const std::optional<Piece>& a, const std::optional<Piece>& b) -> std::optional<Piece> {
        if (!a || !b) return std::nullopt;
        Piece r;
        r.re = poly::add(poly::multiply(a->re, b->re), poly::multiply(a->im, b->im), -1.0);
        r.im = poly::add(poly::multiply(a->re, b->im), poly::multiply(a->im, b->re));
        if (poly::is_zero(r.im)) r.im.clear();
        return r;
      },
      std::min(s.smoothness(), m.smoothness()));
}

/// Restriction to [lo, hi] (pieces cut at the bounds).
inline SpectralDensity truncate(const SpectralDensity& s, double lo, double hi) {
  std::vector<Piece> out;
  for (const Piece& p : s.pieces()) {
    const double a = std::max(p.lo, lo);
    const double b = std::min(p.hi, hi);
    if (b - a > kBreakTol) out.push_back(detail::restrict_piece(p, a, b));
  }
  return SpectralDensity(std::move(out), s.smoothness());
}

// ---------------------------------------------------------------------------------------
// Serialization

inline constexpr int kDensityFormatVersion = 1;

inline nlohmann::json to_json(const SpectralDensity& s) {
  nlohmann::json j;
  j["format"] = "pwenv.spectral-density";
  j["version"] = kDensityFormatVersion;
  const Interval sup = s.support();
  j["support"] = {sup.lo, sup.hi};
  j["smoothness"] = s.smoothness();
  j["pieces"] = nlohmann::json::array();
  for (const Piece& p : s.pieces()) {
    j["pieces"].push_back({{"interval", {p.lo, p.hi}}, {"re_coeffs", p.re}, {"im_coeffs", p.im}});
  }
  return j;
}

inline SpectralDensity density_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("version") && j.at("version").get<int>() != kDensityFormatVersion)
      fail(ErrorKind::io, "unsupported spectral-density version");
    std::vector<Piece> pieces;
    for (const auto& jp : j.at("pieces")) {
      Piece p;
      p.lo = jp.at("interval").at(0).get<double>();
      p.hi = jp.at("interval").at(1).get<double>();
      p.re = jp.at("re_coeffs").get<std::vector<double>>();
      if (jp.contains("im_coeffs")) p.im = jp.at("im_coeffs").get<std::vector<double>>();
      pieces.push_back(std::move(p));
    }
    SpectralDensity s(std::move(pieces), j.at("smoothness").get<int>());
    if (!s.is_zero() && j.contains("support")) {
      const Interval sup = s.support();
      const double a = j.at("support").at(0).get<double>();
      const double b = j.at("support").at(1).get<double>();
      if (sup.lo < a - kBreakTol || sup.hi > b + kBreakTol)
        fail(ErrorKind::io, "pieces extend beyond the declared support");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::io, std::string("malformed spectral-density document: ") + e.what());
  }
}

}  // namespace pwenv
