#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pwenv/evaluate.hpp"

using namespace pwenv;

namespace {

// Composite Simpson on each piece; slow and plain, used as an oracle.
cplx simpson_transform(const SpectralDensity& s, cplx z, int n = 4000) {
  cplx acc{};
  for (const Piece& p : s.pieces()) {
    const double h = p.length() / n;
    cplx part{};
    for (int i = 0; i <= n; ++i) {
      const double t = p.lo + i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      part += w * p.at_local(double(i) / n) * std::exp(cplx(0.0, 1.0) * z * t);
    }
    acc += part * h / 3.0;
  }
  return acc;
}

}  // namespace

TEST(Evaluate, FejerClosedForm) {
  for (double a : {0.5, kPi / 2}) {
    const BandLimitedFunction f(make_fejer(a));
    for (double x : {-40.3, -3.0, -0.01, 0.0, 0.7, 2.2, 11.0, 250.5, 1.0e4}) {
      const double sinc = x == 0.0 ? 1.0 : std::sin(a * x) / (a * x);
      EXPECT_NEAR(std::abs(f(x) - sinc * sinc), 0.0, 1e-13 * std::max(1.0, sinc * sinc)) << "x = " << x;
    }
    const cplx z(1.3, 0.8);
    const cplx sz = std::sin(a * z) / (a * z);
    EXPECT_NEAR(std::abs(f(z) - sz * sz), 0.0, 1e-13);
  }
}

TEST(Evaluate, AgreesWithSimpsonOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-60.0, 60.0), uy(-3.0, 3.0);
  const SpectralDensity dens[] = {make_bump(-kPi, -kPi + 0.5, 3), make_bump(-kPi / 2, kPi / 2, 5),
                                  add(make_fejer(1.0), scale(make_bump(0.5, 2.5, 2), cplx(0.3, -1.0)))};
  for (const auto& s : dens) {
    const BandLimitedFunction f(s);
    for (int i = 0; i < 12; ++i) {
      const cplx z(ux(rng), uy(rng));
      const cplx ref = simpson_transform(s, z);
      const double scale = std::exp(kPi * std::abs(z.imag())) * s.l1_mass();
      EXPECT_NEAR(std::abs(f(z) - ref), 0.0, 1e-9 * scale) << "z = " << z;
      EXPECT_NEAR(std::abs(eval_point(f, z) - ref), 0.0, 1e-9 * scale) << "z = " << z;
    }
  }
}

TEST(Evaluate, ExpansionMatchesDirectRouteFarOut) {
  const BandLimitedFunction f(add(make_bump(-kPi, -kPi + 1.0, 3), make_bump(0.0, 2.0, 4)));
  for (double x : {f.expansion_radius() * 1.01, 500.0, 2000.0}) {
    for (double y : {0.0, 0.5, -1.0}) {
      const cplx z(x, y);
      const cplx direct = eval_point(f, z);
      EXPECT_NEAR(std::abs(f(z) - direct), 0.0, 1e-12 * std::exp(kPi * std::abs(y)) * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(Evaluate, DecayOrder) {
  for (int k : {0, 2, 3, 5}) EXPECT_EQ(BandLimitedFunction(make_bump(-1.0, 1.0, k)).decay_order(), k + 2) << "k = " << k;
  EXPECT_EQ(BandLimitedFunction(make_fejer(1.0)).decay_order(), 2);
  // |f(x)| x^{k+2} stays bounded away from 0 along a sequence of x
  const BandLimitedFunction f(make_bump(-kPi, -kPi + 0.5, 3));
  double peak_far = 0.0;
  for (double x = 4000.0; x < 4100.0; x += 0.05) peak_far = std::max(peak_far, std::abs(f(x)) * std::pow(x, 5));
  double peak_near = 0.0;
  for (double x = 400.0; x < 500.0; x += 0.05) peak_near = std::max(peak_near, std::abs(f(x)) * std::pow(x, 5));
  // one order faster decay would give a ratio near 0.1
  EXPECT_NEAR(peak_far / peak_near, 1.0, 0.15);
}

TEST(Evaluate, TypeAndGrids) {
  const BandLimitedFunction f(make_bump(-2.0, 3.0, 1));
  EXPECT_EQ(exp_type(f), 3.0);
  EvalGrid g{1.0, 0.5, 5, 0.25};
  const auto vals = eval_line(f, g);
  ASSERT_EQ(vals.size(), 5u);
  EXPECT_EQ(g.node(0), 0.0);
  EXPECT_EQ(vals[4], f(cplx(2.0, 0.25)));
  EXPECT_THROW(eval_line(f, EvalGrid{0.0, 0.0, 5, 0.0}), Error);
  const auto pts = eval_nodes(f, {-1.0, 4.0}, -0.5);
  EXPECT_EQ(pts[1], f(cplx(4.0, -0.5)));
}

TEST(Evaluate, ZeroFunction) {
  const BandLimitedFunction z(SpectralDensity{});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z(cplx(3.0, 1.0)), cplx{});
}
