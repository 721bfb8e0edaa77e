#pragma once

// Configurations of subspaces, their Gram matrices, principal angles and the
// packing metrics.

#include <string_view>
#include <vector>

#include "grasspack/linalg.hpp"

namespace grasspack {

using Index = Eigen::Index;

enum class Field { Real, Complex };

/// Sphere is the signed-inner-product geometry of points on S^{d-1}; it is only
/// meaningful for real configurations with K = 1.
enum class Metric { Chordal, Spectral, FubiniStudy, Geodesic, Sphere };

std::string_view to_string(Field field) noexcept;
std::string_view to_string(Metric metric) noexcept;
/// Accepts "R"/"real" and "C"/"complex" (case-insensitive).
Field parse_field(std::string_view text);
/// Accepts chordal, spectral, fs|fubini-study, geodesic, sphere.
Metric parse_metric(std::string_view text);

/// N orthonormal d x K frames stored side by side as a d x KN matrix.
class Configuration {
 public:
  /// Validates 1 <= K <= d, N >= 2, X_n* X_n = I_K within `tol`, and zero
  /// imaginary parts for the real field.
  static Configuration from_blocks(Field field, const std::vector<CMatrix>& blocks,
                                   double tol = 1e-10);
  static Configuration from_matrix(Field field, Index K, CMatrix x, double tol = 1e-10);

  Field field() const noexcept { return field_; }
  Index d() const noexcept { return x_.rows(); }
  Index K() const noexcept { return k_; }
  Index N() const noexcept { return x_.cols() / k_; }
  const CMatrix& matrix() const noexcept { return x_; }
  CMatrix block(Index n) const { return x_.middleCols(n * k_, k_); }

 private:
  Configuration(Field field, Index k, CMatrix x) : field_(field), k_(k), x_(std::move(x)) {}

  Field field_;
  Index k_;
  CMatrix x_;
};

/// KN x KN Hermitian matrix viewed as an N x N grid of K x K blocks.
/// The constructor symmetrizes its input after checking it is Hermitian
/// within 1e-10 * max(1, ||G||_F).
class GramMatrix {
 public:
  GramMatrix(Field field, Index K, Index N, CMatrix entries);

  Field field() const noexcept { return field_; }
  Index K() const noexcept { return k_; }
  Index N() const noexcept { return n_; }
  const CMatrix& entries() const noexcept { return g_; }
  CMatrix block(Index m, Index n) const { return g_.block(m * k_, n * k_, k_, k_); }

 private:
  Field field_;
  Index k_;
  Index n_;
  CMatrix g_;
};

/// K angles in [0, pi/2], nondecreasing.
struct PrincipalAngles {
  RVector angles;
};

PrincipalAngles principal_angles(const CMatrix& s, const CMatrix& t);

/// Distance between the ranges of two orthonormal frames. Sphere is rejected.
double dist(const CMatrix& s, const CMatrix& t, Metric metric);

/// Minimum pairwise distance. For Metric::Sphere (K = 1, real) this is the
/// smallest great-circle angle arccos<x_m, x_n> in radians.
double packing_diameter(const Configuration& config, Metric metric);

GramMatrix gram(const Configuration& config);

/// Extracts a configuration with X*X ~= G from the top-d eigenpairs, then
/// re-orthonormalises each block.
Configuration factor(const GramMatrix& g, Index d);

/// Magnitude of one off-diagonal block under the metric's feasibility measure:
/// Frobenius norm (Chordal), spectral norm (Spectral), |det| (FubiniStudy),
/// real part of the 1x1 entry (Sphere).
template <class Scalar>
double block_magnitude(const Mat<Scalar>& block, Metric metric);

/// Largest block_magnitude over all m != n.
double max_block_magnitude(const GramMatrix& g, Metric metric);

template <class Scalar>
double max_block_magnitude(const Mat<Scalar>& g, Index K, Metric metric);

}  // namespace grasspack
