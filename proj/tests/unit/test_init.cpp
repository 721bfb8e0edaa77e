#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "grasspack/error.hpp"
#include "grasspack/init.hpp"

using namespace grasspack;

TEST(RandomSubspace, SquareIsUnitary) {
  Rng rng = make_stream(61, 0);
  for (Field f : {Field::Real, Field::Complex}) {
    const CMatrix q = random_subspace(4, 4, f, rng);
    EXPECT_LT((q.adjoint() * q - CMatrix::Identity(4, 4)).norm(), 1e-12);
  }
}

TEST(RandomSubspace, RealHasNoImaginaryPart) {
  Rng rng = make_stream(62, 0);
  EXPECT_EQ(random_subspace(5, 2, Field::Real, rng).imag().norm(), 0.0);
}

TEST(RandomSubspace, LineAngleUniformInPlane) {
  // Chi-square on 16 bins, 10^4 draws; 15 dof, p = 0.001 critical value 37.70.
  Rng rng = make_stream(63, 0);
  constexpr int bins = 16, draws = 10000;
  std::vector<int> count(bins, 0);
  for (int i = 0; i < draws; ++i) {
    const CMatrix q = random_subspace(2, 1, Field::Real, rng);
    double a = std::atan2(q(1, 0).real(), q(0, 0).real());
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    ++count[std::min(bins - 1, static_cast<int>(a / std::numbers::pi * bins))];
  }
  const double expected = static_cast<double>(draws) / bins;
  double chi2 = 0.0;
  for (int c : count) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 37.70);
}

TEST(RandomSubspace, ComplexPartsBalanced) {
  // Circular symmetry: real and imaginary parts carry equal energy.
  Rng rng = make_stream(64, 0);
  double re2 = 0.0, im2 = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const CMatrix q = random_subspace(50, 1, Field::Complex, rng);
    re2 += q.real().squaredNorm();
    im2 += q.imag().squaredNorm();
  }
  EXPECT_NEAR(re2 / n, 0.5, 0.01);
  EXPECT_NEAR(im2 / n, 0.5, 0.01);
}

TEST(InitialConfiguration, NoConstraintTakesFirstDraws) {
  InitParams p;
  p.tau = std::sqrt(2.0);
  p.seed = 5;
  p.max_draws = 6;
  const Configuration c = initial_configuration(4, 2, 6, Field::Complex, p);
  Rng rng = make_stream(5, 0);
  for (Index n = 0; n < 6; ++n) {
    EXPECT_EQ(c.block(n), random_subspace(4, 2, Field::Complex, rng));
  }
}

TEST(InitialConfiguration, InfeasibleBudgetFails) {
  InitParams p;
  p.tau = 0.01;
  p.max_draws = 100;
  try {
    initial_configuration(2, 1, 5, Field::Real, p);
    FAIL();
  } catch (const InitFailure& e) {
    EXPECT_EQ(e.code(), Errc::InitFailure);
    EXPECT_LE(e.accepted(), 2u);
  }
}

TEST(InitialConfiguration, PairwiseSimilarityBounded) {
  InitParams p;
  p.tau = 0.9;
  p.seed = 99;
  const Configuration c = initial_configuration(3, 1, 10, Field::Real, p);
  const GramMatrix g = gram(c);
  for (Index m = 0; m < 10; ++m) {
    for (Index n = 0; n < 10; ++n) {
      if (m != n) EXPECT_LE(std::abs(g.entries()(m, n)), 0.9);
    }
  }
}

TEST(InitialConfiguration, SeedDeterminism) {
  InitParams p;
  p.seed = 1234;
  p.stream = 3;
  p.tau = std::sqrt(2.0);
  EXPECT_EQ(initial_configuration(4, 2, 5, Field::Complex, p).matrix(),
            initial_configuration(4, 2, 5, Field::Complex, p).matrix());
  InitParams q = p;
  q.stream = 4;
  EXPECT_NE(initial_configuration(4, 2, 5, Field::Complex, p).matrix(),
            initial_configuration(4, 2, 5, Field::Complex, q).matrix());
}

TEST(InitialConfiguration, SignedSimilarityForPoints) {
  InitParams p;
  p.tau = 0.5;
  p.similarity = Similarity::SignedInner;
  const GramMatrix g = gram(initial_configuration(3, 1, 5, Field::Real, p));
  for (Index m = 0; m < 5; ++m) {
    for (Index n = 0; n < 5; ++n) {
      if (m != n) EXPECT_LE(g.entries()(m, n).real(), 0.5);
    }
  }
  EXPECT_THROW(initial_configuration(3, 2, 6, Field::Real, p), Error);
}

TEST(InitialConfiguration, LeftUnitaryInvariance) {
  // Angles of the rotated lines must stay uniform: same chi-square test after
  // a fixed rotation by 1 radian.
  Rng rng = make_stream(65, 0);
  constexpr int bins = 16, draws = 10000;
  std::vector<int> count(bins, 0);
  const double c = std::cos(1.0), s = std::sin(1.0);
  for (int i = 0; i < draws; ++i) {
    const CMatrix q = random_subspace(2, 1, Field::Real, rng);
    const double x = c * q(0, 0).real() - s * q(1, 0).real();
    const double y = s * q(0, 0).real() + c * q(1, 0).real();
    double a = std::atan2(y, x);
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    ++count[std::min(bins - 1, static_cast<int>(a / std::numbers::pi * bins))];
  }
  double chi2 = 0.0;
  for (int k : count) chi2 += (k - draws / 16.0) * (k - draws / 16.0) / (draws / 16.0);
  EXPECT_LT(chi2, 37.70);
}
