#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "pwenv/norms.hpp"

using namespace pwenv;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_argument;
}

const QuadratureSpec kQuad{};

}  // namespace

TEST(LineMeans, FejerClosedForms) {
  const BandLimitedFunction f(make_fejer(kPi / 2));
  const BandLimitedFunction fp(modulate(make_fejer(kPi / 2), kPi));
  for (double y : {-1.5, -0.25, 0.1, 0.5, 2.0}) {
    const double ay = std::abs(y);
    const NormReport r = lp_line_norm(f, 1.0, y, kQuad);
    EXPECT_NEAR(r.value, 2.0 * std::sinh(kPi * ay) / (kPi * ay), 1e-7 * r.value) << "y = " << y;
    if (y > 0) {
      const NormReport s = lp_line_norm(fp, 1.0, y, kQuad);
      EXPECT_NEAR(s.value, (1.0 - std::exp(-kTwoPi * y)) / (kPi * y), 1e-7 * s.value) << "y = " << y;
    }
  }
}

TEST(EpNorm, FejerValues) {
  const BandLimitedFunction f(make_fejer(kPi / 2));
  EXPECT_NEAR(ep_norm(f, 1.0, kQuad).value, 2.0, 2e-8);
  EXPECT_NEAR(ep_norm(f, 2.0, kQuad).value, std::sqrt(4.0 / 3.0), 2e-8);
}

TEST(EpNorm, Parseval) {
  // int |f|^2 dx = 2 pi int |s|^2 dt
  for (const SpectralDensity& s : {make_bump(-kPi / 2, kPi / 2, 3), make_bump(-kPi, -kPi + 1.0, 5)}) {
    AdaptiveOptions opt;
    opt.rel_tol = 1e-13;
    const Interval sup = s.support();
    const double l2 = integrate_adaptive([&](double t) { return std::norm(s(t)); }, uniform_breaks(sup.lo, sup.hi, (sup.hi - sup.lo) / 30), opt).value;
    const NormReport r = ep_norm(BandLimitedFunction(s), 2.0, kQuad);
    EXPECT_NEAR(r.value * r.value, kTwoPi * l2, 1e-8 * kTwoPi * l2);
  }
}

TEST(EpNorm, ErrorEstimateCoversDeviation) {
  const BandLimitedFunction f(make_fejer(kPi / 2));
  const NormReport r = ep_norm(f, 1.0, kQuad);
  EXPECT_LE(std::abs(r.value - 2.0), 10.0 * r.quadrature_error_estimate + 1e-12);
}

TEST(EpNorm, Errors) {
  const BandLimitedFunction f(make_fejer(kPi / 2));
  EXPECT_EQ(kind_of([&] { ep_norm(f, 0.5, kQuad); }), ErrorKind::diverges);
  EXPECT_EQ(kind_of([&] { ep_norm(f, -1.0, kQuad); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { ep_norm(BandLimitedFunction(make_bump(-4.0, 0.0, 2)), 1.0, kQuad); }), ErrorKind::not_in_ep);
  QuadratureSpec bad;
  bad.rel_tolerance = 0.5;
  EXPECT_EQ(kind_of([&] { ep_norm(f, 1.0, bad); }), ErrorKind::invalid_argument);
}

TEST(Hardy, FejerAtPi) {
  // line means (1 - e^{-2 pi y}) / (pi y) decrease from 2 at y = 0
  const BandLimitedFunction fp(modulate(make_fejer(kPi / 2), kPi));
  const NormReport r = hardy_halfplane_norm(fp, 1.0, HalfPlane::upper, kQuad);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
  EXPECT_EQ(r.attained_at, 0.0);
  EXPECT_FALSE(r.flagged("means-not-monotone"));
  const BandLimitedFunction fm(modulate(make_fejer(kPi / 2), -kPi));
  EXPECT_NEAR(hardy_halfplane_norm(fm, 1.0, HalfPlane::lower, kQuad).value, 2.0, 1e-8);
  EXPECT_EQ(kind_of([&] { hardy_halfplane_norm(fm, 1.0, HalfPlane::upper, kQuad); }), ErrorKind::not_hardy);
}

TEST(Bergman, FejerAtPiClosedForm) {
  // int_0^inf y^alpha (1 - e^{-2 pi y}) / (pi y) dy = -Gamma(alpha) (2 pi)^{-alpha} / pi for -1 < alpha < 0
  const BandLimitedFunction fp(modulate(make_fejer(kPi / 2), kPi));
  for (double alpha : {-2.0 / 3.0, -0.25}) {
    const double exact = -std::tgamma(alpha) * std::pow(kTwoPi, -alpha) / kPi;
    const NormReport r = bergman_halfplane_norm(fp, 1.0, alpha, HalfPlane::upper, kQuad);
    EXPECT_NEAR(r.value, exact, 1e-7 * exact) << "alpha = " << alpha;
  }
  EXPECT_EQ(kind_of([&] { bergman_halfplane_norm(fp, 1.0, -1.0, HalfPlane::upper, kQuad); }), ErrorKind::invalid_weight);
}

TEST(Envelope, FejerReference) {
  // reference value from an independent two-dimensional quadrature
  const BandLimitedFunction f(make_fejer(kPi / 2));
  const NormReport r = envelope_integral_norm(f, EnvelopeParams{0.75, 1.0}, kQuad);
  EXPECT_NEAR(r.value, 8.71071979355, 1e-7 * 8.71071979355);
  EXPECT_EQ(kind_of([&] { envelope_integral_norm(f, EnvelopeParams{0.75, 0.5}, kQuad); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { envelope_integral_norm(f, EnvelopeParams{1.0, 1.0}, kQuad); }), ErrorKind::invalid_argument);
}

TEST(Envelope, Homogeneity) {
  const SpectralDensity s = make_bump(-kPi / 2, kPi / 2, 3);
  const EnvelopeParams ep{0.75, 1.0};
  const double a = envelope_integral_norm(BandLimitedFunction(s), ep, kQuad).value;
  const double b = envelope_integral_norm(BandLimitedFunction(scale(s, cplx(0.0, -3.0))), ep, kQuad).value;
  EXPECT_NEAR(b, 3.0 * a, 1e-9 * b);
}

TEST(Disk, ConstantFunction) {
  // int_D (1 - |w|^2) dA = pi / 2
  const DiskFunction one = DiskFunction::power_series({1.0});
  EXPECT_NEAR(bergman_disk_norm(one, 1.0, 1.0, kQuad).value, kPi / 2, 1e-9);
  // int_D |w|^2 dA = pi / 2, so the L^2 norm is sqrt(pi / 2)
  const DiskFunction w = DiskFunction::power_series({0.0, 1.0});
  EXPECT_NEAR(bergman_disk_norm(w, 2.0, 0.0, kQuad).value, std::sqrt(kPi / 2), 1e-9);
}
