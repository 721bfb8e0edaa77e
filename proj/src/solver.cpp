#include "grasspack/solver.hpp"

#include <cmath>
#include <span>
#include <string>

#include "grasspack/error.hpp"
#include "grasspack/kernels.hpp"
#include "grasspack/projections.hpp"

namespace grasspack {

namespace {

template <class Scalar>
std::span<const double> as_doubles(const Mat<Scalar>& m) {
  return {reinterpret_cast<const double*>(m.data()),
          static_cast<std::size_t>(m.size()) * (sizeof(Scalar) / sizeof(double))};
}

struct LoopResult {
  std::size_t iterations = 0;
  bool stopped_early = false;
  std::vector<double> gaps;
};

template <class Scalar>
LoopResult run_iterations(Mat<Scalar>& g, const SolveParams& params) {
  const StructuralSetSpec structural{params.metric, params.mu, params.K, params.N};
  const SpectralSetSpec spectral{params.d, static_cast<double>(params.K * params.N)};
  const double threshold = params.mu + params.stop_slack;

  LoopResult out;
  out.gaps.reserve(params.max_iterations);
  Mat<Scalar> h(g.rows(), g.cols());
  std::size_t t = 0;
  try {
    for (; t < params.max_iterations; ++t) {
      h = g;
      const double magnitude = project_structural_inplace<Scalar>(h, structural);
      if (magnitude <= threshold) {
        out.stopped_early = true;
        break;
      }
      out.gaps.push_back(std::sqrt(kernels::squared_distance(as_doubles(g), as_doubles(h))));
      g = h;
      project_spectral_inplace<Scalar>(g, spectral);
    }
  } catch (const Error& e) {
    throw Error(e.code(), "iteration " + std::to_string(t) + ": " + e.what());
  }
  out.iterations = t;
  return out;
}

}  // namespace

void validate(const SolveParams& params) {
  if (params.max_iterations < 1) {
    throw Error(Errc::InvalidInput, "max_iterations must be at least 1");
  }
  if (!(params.stop_slack >= 0.0)) {
    throw Error(Errc::InvalidInput, "stop_slack must be nonnegative");
  }
  if (params.K < 1 || params.K > params.d) {
    throw Error(Errc::InvalidInput, "need 1 <= K <= d");
  }
  validate(StructuralSetSpec{params.metric, params.mu, params.K, params.N});
}

template <class Scalar>
void normalize_diagonal_inplace(Mat<Scalar>& g, Index K) {
  const Index n_sub = g.rows() / K;
  std::vector<Mat<Scalar>> inv_sqrt(static_cast<std::size_t>(n_sub));
  for (Index n = 0; n < n_sub; ++n) {
    const HermitianEig<Scalar> eig = hermitian_eig<Scalar>(g.block(n * K, n * K, K, K));
    if (!(eig.eigenvalues(K - 1) >= 1e-10)) {
      throw Error(Errc::SingularBlock, "diagonal block " + std::to_string(n) +
                                           " is not positive definite (lambda_min = " +
                                           std::to_string(eig.eigenvalues(K - 1)) + ")");
    }
    const RVector scale = eig.eigenvalues.cwiseSqrt().cwiseInverse();
    inv_sqrt[static_cast<std::size_t>(n)] =
        eig.eigenvectors * scale.asDiagonal() * eig.eigenvectors.adjoint();
  }
  for (Index m = 0; m < n_sub; ++m) {
    for (Index n = 0; n < n_sub; ++n) {
      g.block(m * K, n * K, K, K) = inv_sqrt[static_cast<std::size_t>(m)] *
                                    g.block(m * K, n * K, K, K) *
                                    inv_sqrt[static_cast<std::size_t>(n)];
    }
  }
  symmetrize(g);
  for (Index n = 0; n < n_sub; ++n) g.block(n * K, n * K, K, K).setIdentity();
}

GramMatrix normalize_diagonal(const GramMatrix& g) {
  if (g.field() == Field::Real) {
    RMatrix m = g.entries().real();
    normalize_diagonal_inplace<double>(m, g.K());
    return GramMatrix(g.field(), g.K(), g.N(), m.cast<cplx>());
  }
  CMatrix m = g.entries();
  normalize_diagonal_inplace<cplx>(m, g.K());
  return GramMatrix(g.field(), g.K(), g.N(), std::move(m));
}

SolveReport alternate(const GramMatrix& g0, const SolveParams& params) {
  validate(params);
  if (g0.K() != params.K || g0.N() != params.N) {
    throw Error(Errc::InvalidInput, "initial Gram matrix shape does not match K, N");
  }
  for (Index n = 0; n < params.N; ++n) {
    if ((g0.block(n, n) - CMatrix::Identity(params.K, params.K)).norm() > 1e-8) {
      throw Error(Errc::InvalidInput, "initial Gram matrix must have identity diagonal blocks");
    }
  }

  LoopResult loop;
  CMatrix last;
  if (g0.field() == Field::Real) {
    RMatrix g = g0.entries().real();
    loop = run_iterations<double>(g, params);
    normalize_diagonal_inplace<double>(g, params.K);
    last = g.cast<cplx>();
  } else {
    CMatrix g = g0.entries();
    loop = run_iterations<cplx>(g, params);
    normalize_diagonal_inplace<cplx>(g, params.K);
    last = std::move(g);
  }

  GramMatrix final_gram(g0.field(), params.K, params.N, std::move(last));
  Configuration config = factor(final_gram, params.d);
  const double diameter = packing_diameter(config, params.metric);
  const double achieved = max_block_magnitude(final_gram, params.metric);
  return SolveReport{loop.iterations, std::move(loop.gaps), loop.stopped_early,
                     std::move(final_gram), std::move(config), diameter, achieved};
}

template void normalize_diagonal_inplace<double>(Mat<double>&, Index);
template void normalize_diagonal_inplace<cplx>(Mat<cplx>&, Index);

}  // namespace grasspack
