#pragma once

// Rankin-type upper bounds on packing diameters and the conversions between
// a target diameter rho and the feasibility parameter mu.

#include "grasspack/geometry.hpp"

namespace grasspack {

struct BoundReport {
  /// Squared packing diameter bound (squared sine of the angle for lines).
  double bound_value = 0.0;
  /// Whether N is within the attainability limit.
  bool attainable = false;
  /// Largest N for which the bound can possibly be met.
  long attainability_limit = 0;
  /// Meeting the bound forces equidistance (equi-isoclinic for spectral).
  bool equidistance_implied = false;
  /// Line packings only: arcsin(sqrt(bound_value)) in degrees, otherwise 0.
  double angle_degrees = 0.0;
};

/// pack_chord^2 <= K(d-K)/d * N/(N-1); attainable only if N <= d(d+1)/2 (real)
/// or N <= d^2 (complex).
BoundReport rankin_chordal(long d, long K, long N, Field field);

/// pack_spec^2 <= (d-K)/d * N/(N-1). Attainment means equi-isoclinic, which
/// caps N at d(d+1)/2 - K(K+1)/2 + 1 (real) or d^2 - K^2 + 1 (complex).
BoundReport rankin_spectral(long d, long K, long N, Field field);

/// Lines in projective space: squared sine of the minimum angle is at most
/// (d-1)N / (d(N-1)); meeting it requires an equiangular configuration.
BoundReport rankin_projective(long d, long N, Field field);

/// Maximum number of equi-isoclinic K-subspaces of F^d.
long lemmens_seidel_limit(long d, long K, Field field);

/// Chordal: sqrt(K - rho^2); Spectral and Sphere: sqrt(1 - rho^2);
/// FubiniStudy: cos(rho). Geodesic is rejected, as is rho outside the
/// metric's range.
double mu_from_rho(double rho, Metric metric, long K);
double rho_from_mu(double mu, Metric metric, long K);

}  // namespace grasspack
