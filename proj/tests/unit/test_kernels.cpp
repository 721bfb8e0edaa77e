#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "grasspack/kernels.hpp"

namespace k = grasspack::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!k::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  }
};

}  // namespace

TEST(KernelScalar, SquaredDistance) {
  const std::vector<double> a{1, 2, 3}, b{1, 0, 0};
  EXPECT_DOUBLE_EQ(k::scalar::squared_distance(a.data(), b.data(), 3), 13.0);
}

TEST(KernelScalar, ClampRangeReportsPreClampMax) {
  std::vector<double> x{-1.2, 0.95, 0.3};
  EXPECT_DOUBLE_EQ(k::scalar::clamp_range(x.data(), x.size(), -1.0, 0.9), 0.95);
  EXPECT_EQ(x, (std::vector<double>{-1.0, 0.9, 0.3}));
}

TEST(KernelScalar, CapModulusKeepsPhase) {
  std::vector<double> x{0.6, 0.8, 0.1, 0.0};
  EXPECT_DOUBLE_EQ(k::scalar::cap_modulus(x.data(), 2, 0.5), 1.0);
  EXPECT_NEAR(x[0], 0.3, 1e-15);
  EXPECT_NEAR(x[1], 0.4, 1e-15);
  EXPECT_EQ(x[2], 0.1);
}

TEST_F(KernelEquivalence, SquaredDistanceMatchesScalar) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = random_values(n, rng), b = random_values(n, rng);
    const double s = k::scalar::squared_distance(a.data(), b.data(), n);
    const double v = k::avx2::squared_distance(a.data(), b.data(), n);
    // Lane-wise accumulation reorders the sum.
    EXPECT_NEAR(v, s, 1e-14 * std::max(1.0, s)) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, ClampRangeBitwise) {
  std::mt19937_64 rng(12);
  for (std::size_t n = 0; n < 70; ++n) {
    auto x = random_values(n, rng);
    auto y = x;
    const double s = k::scalar::clamp_range(x.data(), n, -1.0, 0.4);
    const double v = k::avx2::clamp_range(y.data(), n, -1.0, 0.4);
    EXPECT_EQ(x, y);
    if (n > 0) EXPECT_EQ(s, v);
  }
}

TEST_F(KernelEquivalence, CapAbsBitwise) {
  std::mt19937_64 rng(13);
  for (std::size_t n = 0; n < 70; ++n) {
    auto x = random_values(n, rng);
    auto y = x;
    EXPECT_EQ(k::scalar::cap_abs(x.data(), n, 0.7), k::avx2::cap_abs(y.data(), n, 0.7));
    EXPECT_EQ(x, y);
  }
}

TEST_F(KernelEquivalence, CapModulusBitwise) {
  std::mt19937_64 rng(14);
  for (std::size_t n = 0; n < 40; ++n) {
    auto x = random_values(2 * n, rng);
    auto y = x;
    EXPECT_EQ(k::scalar::cap_modulus(x.data(), n, 0.6), k::avx2::cap_modulus(y.data(), n, 0.6));
    EXPECT_EQ(x, y);
  }
}

TEST_F(KernelEquivalence, DispatchCanBePinned) {
  const k::Isa before = k::active_isa();
  std::vector<double> a{3, 4}, b{0, 0};
  k::set_isa(k::Isa::Scalar);
  EXPECT_EQ(k::active_isa(), k::Isa::Scalar);
  EXPECT_DOUBLE_EQ(k::squared_distance(a, b), 25.0);
  k::set_isa(k::Isa::Avx2);
  EXPECT_DOUBLE_EQ(k::squared_distance(a, b), 25.0);
  k::set_isa(before);
}
