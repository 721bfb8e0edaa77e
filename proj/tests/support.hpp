#pragma once

// Random inputs shared by the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "grasspack/geometry.hpp"
#include "grasspack/init.hpp"
#include "grasspack/linalg.hpp"

namespace gp_test {

using namespace grasspack;

inline CMatrix gaussian(Index rows, Index cols, Field field, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      a(i, j) = field == Field::Real ? cplx(n(rng), 0.0) : cplx(n(rng), n(rng)) / std::sqrt(2.0);
    }
  }
  return a;
}

inline CMatrix random_hermitian(Index n, Field field, Rng& rng) {
  const CMatrix a = gaussian(n, n, field, rng);
  return (a + a.adjoint()) / 2.0;
}

inline CMatrix random_unitary(Index n, Field field, Rng& rng) {
  return random_subspace(n, n, field, rng);
}

inline Configuration random_configuration(Index d, Index K, Index N, Field field, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (Index n = 0; n < N; ++n) blocks.push_back(random_subspace(d, K, field, rng));
  return Configuration::from_blocks(field, blocks);
}

// Real part as a Mat<double>, for the real-field kernels.
inline RMatrix real_of(const CMatrix& a) { return a.real(); }

}  // namespace gp_test
