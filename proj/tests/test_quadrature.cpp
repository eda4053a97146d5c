#include <gtest/gtest.h>

#include <cmath>

#include "pwenv/polynomial.hpp"
#include "pwenv/quadrature.hpp"

using namespace pwenv;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const Rule& r = gauss_legendre(10);
  for (int k = 0; k < 20; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    EXPECT_NEAR(acc, exact, 1e-14) << "k = " << k;
  }
}

TEST(GaussJacobi, PowerWeightMoments) {
  // int_0^h y^alpha y^k dy = h^{alpha+k+1} / (alpha+k+1)
  for (double alpha : {-0.9, -2.0 / 3.0, -0.5, 0.0, 0.7, 2.5}) {
    const double h = 0.37;
    const Rule r = power_weight_rule(12, alpha, h);
    for (int k = 0; k < 24; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = std::pow(h, alpha + k + 1) / (alpha + k + 1);
      EXPECT_NEAR(acc / exact, 1.0, 1e-12) << "alpha = " << alpha << " k = " << k;
    }
  }
}

TEST(GaussJacobi, NodesInsideAndWeightsPositive) {
  const Rule r = gauss_jacobi(30, 0.5, -0.75);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.nodes[i], -1.0);
    EXPECT_LT(r.nodes[i], 1.0);
    EXPECT_GT(r.weights[i], 0.0);
    if (i > 0) {
      EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    }
  }
}

TEST(Adaptive, OscillatoryAndPeaked) {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  auto osc = [](double x) { return std::cos(40.0 * x) * std::exp(-x); };
  const AdaptiveResult a = integrate_adaptive(osc, uniform_breaks(0.0, 10.0, 1.0), opt);
  const double exact = (1.0 - std::exp(-10.0) * (std::cos(400.0) - 40.0 * std::sin(400.0))) / 1601.0;
  EXPECT_NEAR(a.value, exact, 1e-13);
  EXPECT_TRUE(a.converged);

  auto peak = [](double x) { return 1.0 / (1e-4 + x * x); };
  const AdaptiveResult b = integrate_adaptive(peak, uniform_breaks(-1.0, 1.0, 0.5), opt);
  EXPECT_NEAR(b.value, 2.0 * std::atan(100.0) * 100.0, 1e-8);
}

TEST(Adaptive, KinkedIntegrand) {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-11;
  auto g = [](double x) { return std::pow(std::abs(x - 0.3), 0.75); };
  const AdaptiveResult r = integrate_adaptive(g, uniform_breaks(-1.0, 1.0, 0.25), opt);
  const double exact = (std::pow(1.3, 1.75) + std::pow(0.7, 1.75)) / 1.75;
  EXPECT_NEAR(r.value, exact, 1e-9);
}

TEST(Polynomial, TaylorAndReparametrize) {
  const poly::Coeffs c{1.0, -2.0, 0.5, 3.0};
  const poly::Coeffs t = poly::taylor_at(c, 0.4);
  for (double s : {-1.0, 0.0, 0.3, 2.0}) EXPECT_NEAR(poly::eval(t, s - 0.4), poly::eval(c, s), 1e-13);
  const poly::Coeffs r = poly::reparametrize(c, 1.0, -1.0);
  for (double s : {0.0, 0.25, 1.0}) EXPECT_NEAR(poly::eval(r, s), poly::eval(c, 1.0 - s), 1e-13);
  EXPECT_NEAR(poly::derivative_at(c, 0.5, 2), 2.0 * 0.5 + 6.0 * 3.0 * 0.5, 1e-13);
}
