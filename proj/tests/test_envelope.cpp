#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "pwenv/envelope.hpp"

using namespace pwenv;

namespace {

// Minimum of c.x over the vertices of {A x <= b, x >= 0} in two variables.
double vertex_enumeration(const std::vector<double>& A, const std::vector<double>& b, const std::vector<double>& c,
                          bool& feasible) {
  std::vector<std::array<double, 3>> lines;  // a0 x0 + a1 x1 = r
  for (std::size_t i = 0; i < b.size(); ++i) lines.push_back({A[2 * i], A[2 * i + 1], b[i]});
  lines.push_back({-1.0, 0.0, 0.0});
  lines.push_back({0.0, -1.0, 0.0});
  double best = std::numeric_limits<double>::infinity();
  feasible = false;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& u = lines[i];
      const auto& v = lines[j];
      const double det = u[0] * v[1] - u[1] * v[0];
      if (std::abs(det) < 1e-12) continue;
      const double x0 = (u[2] * v[1] - u[1] * v[2]) / det;
      const double x1 = (u[0] * v[2] - u[2] * v[0]) / det;
      bool ok = x0 >= -1e-9 && x1 >= -1e-9;
      for (std::size_t k = 0; ok && k < b.size(); ++k) ok = A[2 * k] * x0 + A[2 * k + 1] * x1 <= b[k] + 1e-9;
      if (!ok) continue;
      feasible = true;
      best = std::min(best, c[0] * x0 + c[1] * x1);
    }
  return best;
}

}  // namespace

TEST(DualSimplex, MatchesVertexEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(-2.0, 2.0), uc(0.0, 3.0);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 4;
    std::vector<double> A(2 * m), b(m), c{uc(rng), uc(rng)};
    for (auto& v : A) v = ua(rng);
    for (auto& v : b) v = ua(rng);
    bool feasible = false;
    const double ref = vertex_enumeration(A, b, c, feasible);
    lp::DualSimplex s(A, b, c);
    const lp::Solution sol = s.solve();
    if (!feasible) {
      EXPECT_NE(sol.status, lp::Status::optimal);
      continue;
    }
    // bounded below since c >= 0 and x >= 0; feasible sets here are always pointed
    ASSERT_EQ(sol.status, lp::Status::optimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective, ref, 1e-9 * std::max(1.0, std::abs(ref))) << "trial " << trial;
    for (std::size_t i = 0; i < m; ++i) EXPECT_LE(A[2 * i] * sol.x[0] + A[2 * i + 1] * sol.x[1], b[i] + 1e-9);
    ++solved;
  }
  EXPECT_GT(solved, 20);
}

TEST(DualSimplex, RejectsNegativeCosts) {
  EXPECT_THROW(lp::DualSimplex({1.0}, {1.0}, {-1.0}), Error);
  EXPECT_THROW(lp::DualSimplex({1.0, 2.0}, {1.0}, {1.0}), Error);
}

TEST(Projection, RecoversTheEmbeddedFunction) {
  const PartitionOfUnity pu = make_partition(3);
  for (const SpectralDensity& s : {make_bump(-kPi / 2, kPi / 2, 3), make_fejer(kPi / 2),
                                   add(make_bump(-kPi, -kPi + 1.0, 5), scale(make_bump(1.0, kPi, 2), cplx(0.0, 1.0)))}) {
    const BandLimitedFunction f(s);
    const BandLimitedFunction g = project_Q(embed_j(f), pu);
    for (int i = 0; i <= 400; ++i) {
      const double t = -kPi + kTwoPi * i / 400.0;
      EXPECT_NEAR(std::abs(g.density()(t) - s(t)), 0.0, 1e-13);
    }
    for (double x : {-30.0, 0.0, 2.5, 100.0}) EXPECT_NEAR(std::abs(g(x) - f(x)), 0.0, 1e-12);
  }
}

TEST(Projection, ComponentsLiveOnHalfBands) {
  const HalfPlanePair pr = embed_j(BandLimitedFunction(make_fejer(kPi / 2)));
  EXPECT_NEAR(pr.plus.density().support().lo, 0.0, 1e-15);
  EXPECT_NEAR(pr.minus.density().support().hi, 0.0, 1e-15);
  EXPECT_THROW(embed_j(BandLimitedFunction(make_fejer(2.0))), Error);
}

TEST(Counterexample, FamilyIsNormalized) {
  for (double eps : {1.0, 0.25, 0.125}) {
    const BandLimitedFunction f = counterexample_family(eps, 3);
    EXPECT_NEAR(f.density().integral().real(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(f(0.0)), 1.0, 1e-13);
    EXPECT_NEAR(f.density().support().hi, -kPi + eps, 1e-15);
  }
  EXPECT_THROW(counterexample_family(0.0, 3), Error);
  EXPECT_THROW(counterexample_family(0.5, 1), Error);
}

TEST(Counterexample, RatioGrowsAsEpsShrinks) {
  const QuadratureSpec quad{};
  const CounterexampleRow a = counterexample_row(1.0, 0.75, 3, quad);
  const CounterexampleRow b = counterexample_row(0.5, 0.75, 3, quad);
  EXPECT_GT(b.ratio - b.ratio_error, a.ratio + a.ratio_error);

  EXPECT_GT(a.e1.value, 0.0);
}

TEST(Minkowski, SingleAtomAndHomogeneity) {
  const QuadratureSpec quad{};
  const Dictionary dict = make_dictionary(0.75, 1.0, quad);
  ASSERT_GT(dict.size(), 2u);
  const BandLimitedFunction& atom = dict.atoms[1];
  const DecompositionResult r = minkowski_norm(atom, dict, quad);
  EXPECT_LE(r.objective, 1.0 + 1e-9);
  EXPECT_GT(r.objective, 0.0);
  EXPECT_LE(r.residual, r.tolerance * 1.001);
  const BandLimitedFunction twice(scale(atom.density(), cplx(0.0, 2.0)));
  const DecompositionResult r2 = minkowski_norm(twice, dict, quad);
  EXPECT_NEAR(r2.objective, 2.0 * r.objective, 1e-6 * r2.objective);
}

TEST(Minkowski, DictionaryAtomsHaveUnitNorm) {
  const QuadratureSpec quad{};
  const Dictionary dict = make_dictionary(0.75, 1.0, quad);
  for (const auto& a : dict.atoms) EXPECT_NEAR(ep_norm(a, 0.75, quad).value, 1.0, 1e-9);
}
