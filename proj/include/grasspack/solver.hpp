#pragma once

// Alternating projection between the structural set H(mu) and the spectral
// set G, followed by diagonal renormalisation and factorisation.

#include <cstddef>
#include <vector>

#include "grasspack/geometry.hpp"

namespace grasspack {

struct SolveParams {
  std::size_t max_iterations = 5000;
  double stop_slack = 1e-5;
  Metric metric = Metric::Chordal;
  double mu = 0.0;
  Index d = 2;
  Index K = 1;
  Index N = 2;
};

struct SolveReport {
  std::size_t iterations_used = 0;
  /// ||G(t) - H(t)||_F for every completed iteration.
  std::vector<double> gap_history;
  bool stopped_early = false;
  GramMatrix final_gram;
  Configuration final_config;
  /// packing_diameter(final_config, metric); radians for Sphere.
  double final_diameter = 0.0;
  /// max_block_magnitude(final_gram, metric): the only constraint the output may violate.
  double mu_achieved = 0.0;
};

/// Throws InvalidInput for inconsistent parameters (including the geodesic metric).
void validate(const SolveParams& params);

/// Runs H(t) = P_H(G(t)), G(t+1) = P_G(H(t)) until max_block_magnitude(G(t))
/// <= mu + stop_slack or max_iterations is reached, then normalises the
/// diagonal blocks and factors the result. Projection failures are rethrown
/// with the iteration index attached.
SolveReport alternate(const GramMatrix& g0, const SolveParams& params);

/// D^{-1/2} G D^{-1/2} with D the block diagonal of G. Throws SingularBlock if
/// a diagonal block has an eigenvalue below 1e-10.
GramMatrix normalize_diagonal(const GramMatrix& g);

template <class Scalar>
void normalize_diagonal_inplace(Mat<Scalar>& g, Index K);

}  // namespace grasspack
