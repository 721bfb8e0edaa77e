#include <gtest/gtest.h>

#include <limits>

#include "grasspack/error.hpp"
#include "support.hpp"

using namespace grasspack;
using gp_test::gaussian;

namespace {

template <class S>
double eig_residual(const Mat<S>& a) {
  const HermitianEig<S> e = hermitian_eig<S>(a);
  const Mat<S> rec = e.eigenvectors * e.eigenvalues.template cast<S>().asDiagonal() * e.eigenvectors.adjoint();
  return (rec - a).norm();
}

template <class S>
double svd_residual(const Mat<S>& a) {
  const Svd<S> f = svd<S>(a);
  return (f.left * f.singulars.template cast<S>().asDiagonal() * f.right.adjoint() - a).norm();
}

bool nonincreasing(const RVector& v) {
  for (Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(i - 1)) return false;
  }
  return true;
}

// Orthogonal projector onto range(A).
CMatrix range_projector(const CMatrix& a) {
  const CMatrix q = a.householderQr().householderQ() * CMatrix::Identity(a.rows(), a.cols());
  return q * q.adjoint();
}

}  // namespace

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
  const HermitianEig<double> e = hermitian_eig<double>(RMatrix::Identity(2, 2));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
  EXPECT_LT((e.eigenvectors.adjoint() * e.eigenvectors - RMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(HermitianEig, DiagonalInputSortedNonincreasing) {
  RMatrix a(2, 2);
  a << 1, 0, 0, 3;
  const HermitianEig<double> e = hermitian_eig<double>(a);
  EXPECT_DOUBLE_EQ(e.eigenvalues(0), 3.0);
  EXPECT_DOUBLE_EQ(e.eigenvalues(1), 1.0);
  EXPECT_NEAR(std::abs(e.eigenvectors(1, 0)), 1.0, 1e-15);
}

TEST(HermitianEig, RandomReconstruction) {
  Rng rng = make_stream(1, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix c = gp_test::random_hermitian(6, Field::Complex, rng);
    EXPECT_LT(eig_residual<cplx>(c), 1e-10 * std::max(1.0, c.norm()));
    EXPECT_TRUE(nonincreasing(hermitian_eigenvalues<cplx>(c)));
    const RMatrix r = gp_test::random_hermitian(6, Field::Real, rng).real();
    EXPECT_LT(eig_residual<double>(r), 1e-10 * std::max(1.0, r.norm()));
  }
}

TEST(HermitianEig, SymmetrizesSlightlyAsymmetricInput) {
  Rng rng = make_stream(2, 0);
  CMatrix c = gp_test::random_hermitian(5, Field::Complex, rng);
  CMatrix skewed = c;
  skewed(0, 1) += 1e-13;
  const HermitianEig<cplx> e = hermitian_eig<cplx>(skewed);
  const CMatrix rec = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
  EXPECT_LT((rec - c).norm(), 1e-12);
}

TEST(HermitianEig, RejectsNonFinite) {
  RMatrix a = RMatrix::Identity(3, 3);
  a(1, 2) = a(2, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    hermitian_eig<double>(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidInput);
  }
}

TEST(Svd, ZeroMatrix) {
  const RVector s = singular_values<cplx>(CMatrix::Zero(3, 2));
  ASSERT_EQ(s.size(), 2);
  EXPECT_EQ(s.maxCoeff(), 0.0);
}

TEST(Svd, UnitaryHasUnitSingulars) {
  Rng rng = make_stream(3, 0);
  const CMatrix u = gp_test::random_unitary(3, Field::Complex, rng);
  const RVector s = singular_values<cplx>(u);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(s(i), 1.0, 1e-12);
}

TEST(Svd, RandomReconstruction) {
  Rng rng = make_stream(4, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix a = gaussian(4, 2, Field::Complex, rng);
    EXPECT_LT(svd_residual<cplx>(a), 1e-10 * std::max(1.0, a.norm()));
    const Svd<cplx> f = svd<cplx>(a);
    EXPECT_TRUE(nonincreasing(f.singulars));
    EXPECT_GE(f.singulars.minCoeff(), 0.0);
    EXPECT_LT((f.left.adjoint() * f.left - CMatrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_LT((f.right.adjoint() * f.right - CMatrix::Identity(2, 2)).norm(), 1e-12);
    const RMatrix r = gaussian(2, 5, Field::Real, rng).real();
    EXPECT_LT(svd_residual<double>(r), 1e-10 * std::max(1.0, r.norm()));
  }
}

TEST(Svd, RejectsNonFinite) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = cplx(std::numeric_limits<double>::infinity(), 0.0);
  EXPECT_THROW(svd<cplx>(a), Error);
}

TEST(QrOrthonormal, OrthonormalInputKeepsRange) {
  Rng rng = make_stream(5, 0);
  const CMatrix q0 = random_subspace(5, 2, Field::Complex, rng);
  const CMatrix q = qr_orthonormal<cplx>(q0);
  EXPECT_LT((q.adjoint() * q - CMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((q * q.adjoint() - q0 * q0.adjoint()).norm(), 1e-12);
}

TEST(QrOrthonormal, ScaledIdentityColumns) {
  const RMatrix a = 2.0 * RMatrix::Identity(4, 2);
  const RMatrix q = qr_orthonormal<double>(a);
  EXPECT_LT((q - RMatrix::Identity(4, 2)).norm(), 1e-15);
}

TEST(QrOrthonormal, RandomGaussianIsOrthonormalWithSameRange) {
  Rng rng = make_stream(6, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Field field = rep % 2 ? Field::Real : Field::Complex;
    const CMatrix a = gaussian(5, 2, field, rng);
    const CMatrix q = qr_orthonormal<cplx>(a);
    EXPECT_LT((q.adjoint() * q - CMatrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_LT((q * q.adjoint() - range_projector(a)).norm(), 1e-10);
  }
}

TEST(QrOrthonormal, RankDeficientThrows) {
  RMatrix a(3, 2);
  a << 1, 2, 1, 2, 1, 2;
  try {
    qr_orthonormal<double>(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficient);
  }
}
