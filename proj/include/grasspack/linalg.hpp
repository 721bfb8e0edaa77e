#pragma once

// Dense linear-algebra primitives with explicit numerical contracts.
//
// Everything is templated over the scalar type and instantiated for double
// (real field) and std::complex<double> (complex field). Eigenvalues and
// singular values are always returned in nonincreasing order.

#include <complex>

#include <Eigen/Dense>

namespace grasspack {

using cplx = std::complex<double>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RMatrix = Mat<double>;
using CMatrix = Mat<cplx>;
using RVector = Eigen::VectorXd;

template <class Scalar>
struct HermitianEig {
  RVector eigenvalues;        // nonincreasing
  Mat<Scalar> eigenvectors;   // column j pairs with eigenvalue j
};

template <class Scalar>
struct Svd {
  Mat<Scalar> left;
  RVector singulars;  // nonnegative, nonincreasing
  Mat<Scalar> right;
};

/// Eigendecomposition of (A + A*)/2. Throws InvalidInput on non-finite entries
/// or a non-square argument.
template <class Scalar>
HermitianEig<Scalar> hermitian_eig(const Mat<Scalar>& a);

/// Eigenvalues only, nonincreasing.
template <class Scalar>
RVector hermitian_eigenvalues(const Mat<Scalar>& a);

/// Thin SVD: left is rows x r, right is cols x r with r = min(rows, cols).
template <class Scalar>
Svd<Scalar> svd(const Mat<Scalar>& a);

/// Singular values only, nonincreasing.
template <class Scalar>
RVector singular_values(const Mat<Scalar>& a);

/// Orthonormal basis for range(A), d x K with K <= d. The triangular factor is
/// normalised to a positive real diagonal so the result is unique; an input
/// with orthonormal columns comes back unchanged up to roundoff.
/// Throws RankDeficient when sigma_min <= 1e-12 * sigma_max.
template <class Scalar>
Mat<Scalar> qr_orthonormal(const Mat<Scalar>& a);

template <class Scalar>
bool all_finite(const Mat<Scalar>& a) {
  return a.allFinite();
}

/// (A + A*)/2 in place.
template <class Scalar>
void symmetrize(Mat<Scalar>& a) {
  a = (0.5 * (a + a.adjoint())).eval();
}

}  // namespace grasspack
