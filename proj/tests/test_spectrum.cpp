#include <gtest/gtest.h>

#include <cmath>

#include "pwenv/spectrum.hpp"

using namespace pwenv;

TEST(Smoothstep, EndpointValuesAndFlatness) {
  for (int k : {0, 1, 3, 5}) {
    const poly::Coeffs c = smoothstep_coeffs(k);
    EXPECT_NEAR(poly::eval(c, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(poly::eval(c, 1.0), 1.0, 1e-12);
    for (int m = 1; m <= k; ++m) {
      EXPECT_NEAR(poly::derivative_at(c, 0.0, m), 0.0, 1e-9) << "k=" << k << " m=" << m;
      EXPECT_NEAR(poly::derivative_at(c, 1.0, m), 0.0, 1e-8) << "k=" << k << " m=" << m;
    }
    if (k >= 1) {
      EXPECT_NEAR(smoothstep(k, 0.5), 0.5, 1e-14);
    }
  }
}

TEST(Bump, SupportPlateauAndSmoothness) {
  const SpectralDensity b = make_bump(-kPi, -kPi + 0.5, 3);
  EXPECT_EQ(b.support().lo, -kPi);
  EXPECT_NEAR(b.support().hi, -kPi + 0.5, 1e-15);
  EXPECT_NEAR(b(-kPi + 0.25).real(), 1.0, 1e-15);
  EXPECT_EQ(b(-kPi - 0.1), cplx{});
  EXPECT_TRUE(b.is_real());
  // C^3 contact with zero: the density vanishes to order exactly 4 at the left end
  const double h = 1e-5;
  const double r = b(-kPi + 2 * h).real() / b(-kPi + h).real();
  EXPECT_NEAR(r, 16.0, 0.1);
  EXPECT_GT(b(-kPi + h).real(), 0.0);
}

TEST(Bump, IntegralMatchesQuadrature) {
  const SpectralDensity b = make_bump(-1.0, 2.0, 5);
  // plateau of length 1 and two ramps whose areas sum to one third of the width
  EXPECT_NEAR(b.integral().real(), 2.0, 1e-13);
  EXPECT_NEAR(b.l1_mass(), 2.0, 1e-12);
}

TEST(Fejer, TriangleDensity) {
  const SpectralDensity f = make_fejer(kPi / 2);
  EXPECT_NEAR(f.integral().real(), 1.0, 1e-15);
  EXPECT_NEAR(f(0.0).real(), 1.0 / kPi, 1e-15);
  EXPECT_NEAR(f(kPi / 2).real(), 0.5 / kPi, 1e-15);
  EXPECT_THROW(make_fejer(2.0), Error);
}

TEST(Partition, SumsToOneOnTheBand) {
  for (int k : {1, 3, 6}) {
    const PartitionOfUnity pu = make_partition(k);
    EXPECT_NEAR(pu.phi_hat.support().lo, -kTwoPi, 1e-15);
    EXPECT_NEAR(pu.phi_hat.support().hi, kPi, 1e-15);
    EXPECT_NEAR(pu.psi_hat.support().lo, 0.0, 1e-15);
    EXPECT_NEAR(pu.psi_hat.support().hi, kTwoPi, 1e-15);
    for (int i = 0; i <= 1000; ++i) {
      const double t = -kPi + kTwoPi * i / 1000.0;
      EXPECT_NEAR((pu.phi_hat(t) + pu.psi_hat(t)).real(), 1.0, 1e-15) << "t = " << t;
    }
  }
}

TEST(Transforms, ModulateReflectScaleAdd) {
  const SpectralDensity b = make_bump(-1.0, 0.5, 2);
  const SpectralDensity m = modulate(b, 0.75);
  const SpectralDensity r = reflect(b);
  const SpectralDensity s = scale(b, cplx(0.0, 2.0));
  for (double t : {-0.9, -0.6, 0.0, 0.3}) {
    EXPECT_NEAR(std::abs(m(t + 0.75) - b(t)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r(-t) - b(t)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s(t) - cplx(0.0, 2.0) * b(t)), 0.0, 1e-14);
  }
  const SpectralDensity sum = add(b, make_fejer(0.5));
  for (double t : {-1.2, -0.95, -0.2, 0.45, 0.9})
    EXPECT_NEAR(std::abs(sum(t) - b(t) - make_fejer(0.5)(t)), 0.0, 1e-14);
  EXPECT_EQ(sum.smoothness(), 0);
  EXPECT_THROW(modulate(b, 6.0), Error);
}

TEST(Transforms, MultiplyAndTruncate) {
  const SpectralDensity a = make_bump(-2.0, 1.0, 1);
  const SpectralDensity b = make_fejer(1.0);
  const SpectralDensity ab = multiply_pointwise(a, b);
  for (double t : {-1.9, -1.0, 0.0, 0.7, 0.99}) EXPECT_NEAR(std::abs(ab(t) - a(t) * b(t)), 0.0, 1e-14);
  const SpectralDensity tr = truncate(a, -1.0, 0.5);
  EXPECT_NEAR(tr.support().lo, -1.0, 1e-15);
  EXPECT_NEAR(tr.support().hi, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(tr(0.0) - a(0.0)), 0.0, 1e-15);
}

TEST(Validation, RejectsBadInput) {
  EXPECT_THROW(make_bump(1.0, 1.0, 3), Error);
  EXPECT_THROW(make_bump(-7.0, 0.0, 3), Error);
  EXPECT_THROW(make_bump(0.0, 1.0, -1), Error);
  std::vector<Piece> overlapping{{0.0, 1.0, {1.0}, {}}, {0.5, 2.0, {1.0}, {}}};
  try {
    SpectralDensity s(overlapping, 0);
    FAIL() << "overlap accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(Json, RoundTrip) {
  const SpectralDensity s = add(make_bump(-kPi, -kPi + 1.0, 3), scale(make_fejer(1.0), cplx(0.5, -0.25)));
  const SpectralDensity back = density_from_json(nlohmann::json::parse(to_json(s).dump()));
  ASSERT_EQ(back.pieces().size(), s.pieces().size());
  EXPECT_EQ(back.smoothness(), s.smoothness());
  for (int i = 0; i <= 200; ++i) {
    const double t = -kPi + 5.0 * i / 200.0;
    EXPECT_EQ(back(t), s(t));
  }
}

TEST(Json, MalformedDocumentsAreIoErrors) {
  auto kind_of = [](const std::string& text) {
    try {
      density_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::invalid_argument;
  };
  EXPECT_EQ(kind_of(R"({"smoothness": 0})"), ErrorKind::io);
  EXPECT_EQ(kind_of(R"({"version": 9, "smoothness": 0, "pieces": []})"), ErrorKind::io);
  EXPECT_EQ(kind_of(R"({"smoothness": 0, "support": [0, 1], "pieces": [{"interval": [0, 2], "re_coeffs": [1]}]})"),
            ErrorKind::io);
}
