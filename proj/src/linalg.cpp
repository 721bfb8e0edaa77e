#include "grasspack/linalg.hpp"

#include <cmath>

#include "grasspack/error.hpp"

namespace grasspack {

namespace {

template <class Scalar>
void require_finite(const Mat<Scalar>& a, const char* op) {
  if (!all_finite(a)) {
    throw Error(Errc::InvalidInput, std::string(op) + ": non-finite entry");
  }
}

template <class Scalar>
void require_square(const Mat<Scalar>& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::InvalidInput, std::string(op) + ": matrix is not square");
  }
}

}  // namespace

template <class Scalar>
HermitianEig<Scalar> hermitian_eig(const Mat<Scalar>& a) {
  require_square(a, "hermitian_eig");
  require_finite(a, "hermitian_eig");
  Mat<Scalar> sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "hermitian_eig: eigensolver did not converge");
  }
  // Eigen sorts ascending; flip to the nonincreasing convention.
  HermitianEig<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

template <class Scalar>
RVector hermitian_eigenvalues(const Mat<Scalar>& a) {
  require_square(a, "hermitian_eigenvalues");
  require_finite(a, "hermitian_eigenvalues");
  Mat<Scalar> sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

template <class Scalar>
Svd<Scalar> svd(const Mat<Scalar>& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<Mat<Scalar>> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

template <class Scalar>
RVector singular_values(const Mat<Scalar>& a) {
  require_finite(a, "singular_values");
  Eigen::JacobiSVD<Mat<Scalar>> solver(a);
  return solver.singularValues();
}

template <class Scalar>
Mat<Scalar> qr_orthonormal(const Mat<Scalar>& a) {
  require_finite(a, "qr_orthonormal");
  const auto d = a.rows();
  const auto k = a.cols();
  if (k == 0 || k > d) {
    throw Error(Errc::InvalidInput, "qr_orthonormal: need 1 <= K <= d");
  }
  const RVector sv = singular_values<Scalar>(a);
  if (!(sv(k - 1) > 1e-12 * sv(0))) {
    throw Error(Errc::RankDeficient, "qr_orthonormal: input is numerically rank deficient");
  }
  Eigen::HouseholderQR<Mat<Scalar>> qr(a);
  Mat<Scalar> q = qr.householderQ() * Mat<Scalar>::Identity(d, k);
  const Mat<Scalar>& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

template HermitianEig<double> hermitian_eig(const Mat<double>&);
template HermitianEig<cplx> hermitian_eig(const Mat<cplx>&);
template RVector hermitian_eigenvalues(const Mat<double>&);
template RVector hermitian_eigenvalues(const Mat<cplx>&);
template Svd<double> svd(const Mat<double>&);
template Svd<cplx> svd(const Mat<cplx>&);
template RVector singular_values(const Mat<double>&);
template RVector singular_values(const Mat<cplx>&);
template Mat<double> qr_orthonormal(const Mat<double>&);
template Mat<cplx> qr_orthonormal(const Mat<cplx>&);

}  // namespace grasspack
