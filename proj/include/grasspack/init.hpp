#pragma once

// Random subspaces and the rejection-sampled starting configuration.

#include <cstdint>
#include <random>

#include "grasspack/geometry.hpp"

namespace grasspack {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a base seed; trial k of an
/// experiment uses make_stream(seed, k).
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

enum class Similarity {
  Frobenius,    // ||X_m* X_n||_F <= tau
  SignedInner,  // Re <x_m, x_n> <= tau (points on a sphere, K = 1)
};

struct InitParams {
  double tau = 0.9;
  std::size_t max_draws = 10000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Similarity similarity = Similarity::Frobenius;
};

/// Orthonormal basis of a uniformly distributed K-subspace: QR of a d x K
/// Gaussian matrix (complex entries have real and imaginary parts N(0, 1/2)).
CMatrix random_subspace(Index d, Index K, Field field, Rng& rng);

/// Draws subspaces until N are pairwise within tau. Throws InitFailure once
/// max_draws subspaces have been drawn without success.
Configuration initial_configuration(Index d, Index K, Index N, Field field,
                                    const InitParams& params);

}  // namespace grasspack
