#pragma once

// Matrix nearness solvers used by the alternating projection: the nearest
// point in the structural set H(mu) (identity diagonal blocks, off-diagonal
// blocks bounded in the metric's magnitude) and in the spectral set G (PSD,
// rank <= d, fixed trace).

#include "grasspack/geometry.hpp"

namespace grasspack {

struct StructuralSetSpec {
  Metric metric = Metric::Chordal;
  double mu = 0.0;
  Index K = 1;
  Index N = 2;
};

struct SpectralSetSpec {
  Index d = 1;
  double trace_target = 0.0;  // KN for Gram matrices
};

/// Throws InvalidInput if mu is out of range for the metric, the metric is
/// geodesic, or Sphere is requested with K != 1.
void validate(const StructuralSetSpec& spec);
void validate(const SpectralSetSpec& spec, Index dim);

GramMatrix project_structural(const GramMatrix& g, const StructuralSetSpec& spec);
GramMatrix project_spectral(const GramMatrix& h, const SpectralSetSpec& spec);

/// One Fubini-Study block solve: minimise 1/2 ||exp(x) - c||^2 subject to
/// sum(x) <= log(mu). At the returned point exp(x_k) (c_k - exp(x_k)) = nu for
/// every k, with nu >= 0 the multiplier of the (active) constraint.
struct FsBlockSolution {
  RVector x;
  double nu = 0.0;
  double kkt_residual = 0.0;  // max_k |exp(x_k)(c_k - exp(x_k)) - nu|
  double objective = 0.0;     // 1/2 ||exp(x) - c||^2
};

/// Requires mu in (0, 1] and prod(c) > mu. Entries of c are clamped below at
/// 1e-12. Throws NumericalFailure if no KKT point can be bracketed.
FsBlockSolution solve_fs_block(const RVector& c, double mu);

// Scalar-typed in-place forms driven by the solver. project_structural_inplace
// returns the largest off-diagonal block magnitude of its input, which is the
// quantity the stopping rule tests.
template <class Scalar>
double project_structural_inplace(Mat<Scalar>& g, const StructuralSetSpec& spec);

struct SpectralProjectionInfo {
  double gamma = 0.0;
  Index rank = 0;
};

template <class Scalar>
SpectralProjectionInfo project_spectral_inplace(Mat<Scalar>& h, const SpectralSetSpec& spec);

}  // namespace grasspack
