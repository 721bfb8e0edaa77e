#include "grasspack/init.hpp"

#include <cmath>
#include <vector>

#include "grasspack/error.hpp"

namespace grasspack {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x67726173u};
  return Rng(seq);
}

CMatrix random_subspace(Index d, Index K, Field field, Rng& rng) {
  if (K < 1 || K > d) {
    throw Error(Errc::InvalidInput, "random_subspace needs 1 <= K <= d");
  }
  const double sd = field == Field::Real ? 1.0 : std::sqrt(0.5);
  std::normal_distribution<double> normal(0.0, sd);
  for (;;) {
    CMatrix a(d, K);
    for (Index j = 0; j < K; ++j) {
      for (Index i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = field == Field::Real ? 0.0 : normal(rng);
        a(i, j) = cplx(re, im);
      }
    }
    try {
      if (field == Field::Real) return qr_orthonormal<double>(a.real()).cast<cplx>();
      return qr_orthonormal<cplx>(a);
    } catch (const Error& e) {
      if (e.code() != Errc::RankDeficient) throw;
    }
  }
}

Configuration initial_configuration(Index d, Index K, Index N, Field field,
                                    const InitParams& params) {
  if (K < 1 || K > d || N < 2) {
    throw Error(Errc::InvalidInput, "initial_configuration needs 1 <= K <= d and N >= 2");
  }
  if (params.similarity == Similarity::Frobenius &&
      !(params.tau > 0.0 && params.tau <= std::sqrt(static_cast<double>(K)) + 1e-15)) {
    throw Error(Errc::InvalidInput, "tau must lie in (0, sqrt(K)]");
  }
  if (params.similarity == Similarity::SignedInner && (K != 1 || field != Field::Real)) {
    throw Error(Errc::InvalidInput, "signed similarity needs real points (K = 1)");
  }

  Rng rng = make_stream(params.seed, params.stream);
  std::vector<CMatrix> accepted;
  accepted.reserve(static_cast<std::size_t>(N));
  for (std::size_t draw = 0; draw < params.max_draws; ++draw) {
    CMatrix candidate = random_subspace(d, K, field, rng);
    bool ok = true;
    for (const CMatrix& prev : accepted) {
      const CMatrix overlap = prev.adjoint() * candidate;
      const double similarity = params.similarity == Similarity::Frobenius
                                    ? overlap.norm()
                                    : overlap(0, 0).real();
      if (similarity > params.tau) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    accepted.push_back(std::move(candidate));
    if (static_cast<Index>(accepted.size()) == N) {
      return Configuration::from_blocks(field, accepted);
    }
  }
  throw InitFailure(accepted.size(), params.max_draws);
}

}  // namespace grasspack
