#include "grasspack/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "grasspack/error.hpp"

namespace grasspack {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_frame(const CMatrix& s, double tol, const char* what) {
  const auto k = s.cols();
  const double err = (s.adjoint() * s - CMatrix::Identity(k, k)).norm();
  if (!(err <= tol)) {
    throw Error(Errc::InvalidInput,
                std::string(what) + ": frame is not orthonormal (||S*S - I||_F = " +
                    std::to_string(err) + ")");
  }
}

double clamp_unit(double c) { return std::clamp(c, 0.0, 1.0); }

}  // namespace

std::string_view to_string(Field field) noexcept {
  return field == Field::Real ? "R" : "C";
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::Chordal: return "chordal";
    case Metric::Spectral: return "spectral";
    case Metric::FubiniStudy: return "fs";
    case Metric::Geodesic: return "geodesic";
    case Metric::Sphere: return "sphere";
  }
  return "unknown";
}

Field parse_field(std::string_view text) {
  const std::string t = lower(text);
  if (t == "r" || t == "real") return Field::Real;
  if (t == "c" || t == "complex") return Field::Complex;
  throw Error(Errc::InvalidInput, "unknown field '" + std::string(text) + "'");
}

Metric parse_metric(std::string_view text) {
  const std::string t = lower(text);
  if (t == "chordal") return Metric::Chordal;
  if (t == "spectral") return Metric::Spectral;
  if (t == "fs" || t == "fubini-study" || t == "fubinistudy") return Metric::FubiniStudy;
  if (t == "geodesic") return Metric::Geodesic;
  if (t == "sphere") return Metric::Sphere;
  throw Error(Errc::InvalidInput, "unknown metric '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Configuration / GramMatrix

Configuration Configuration::from_blocks(Field field, const std::vector<CMatrix>& blocks,
                                         double tol) {
  if (blocks.size() < 2) {
    throw Error(Errc::InvalidInput, "configuration needs N >= 2 subspaces");
  }
  const Index d = blocks.front().rows();
  const Index k = blocks.front().cols();
  CMatrix x(d, k * static_cast<Index>(blocks.size()));
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    if (blocks[n].rows() != d || blocks[n].cols() != k) {
      throw Error(Errc::InvalidInput, "configuration blocks have inconsistent shapes");
    }
    x.middleCols(static_cast<Index>(n) * k, k) = blocks[n];
  }
  return from_matrix(field, k, std::move(x), tol);
}

Configuration Configuration::from_matrix(Field field, Index K, CMatrix x, double tol) {
  if (K < 1 || K > x.rows()) {
    throw Error(Errc::InvalidInput, "configuration needs 1 <= K <= d");
  }
  if (x.cols() % K != 0 || x.cols() / K < 2) {
    throw Error(Errc::InvalidInput, "configuration needs N >= 2 blocks of width K");
  }
  if (!x.allFinite()) {
    throw Error(Errc::InvalidInput, "configuration has non-finite entries");
  }
  if (field == Field::Real && x.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(Errc::InvalidInput, "real configuration has nonzero imaginary parts");
  }
  for (Index n = 0; n < x.cols() / K; ++n) {
    check_frame(x.middleCols(n * K, K), tol, "configuration");
  }
  return Configuration(field, K, std::move(x));
}

GramMatrix::GramMatrix(Field field, Index K, Index N, CMatrix entries)
    : field_(field), k_(K), n_(N), g_(std::move(entries)) {
  if (K < 1 || N < 1 || g_.rows() != K * N || g_.cols() != K * N) {
    throw Error(Errc::InvalidInput, "Gram matrix shape does not match K x N blocks");
  }
  if (!g_.allFinite()) {
    throw Error(Errc::InvalidInput, "Gram matrix has non-finite entries");
  }
  const double asym = (g_ - g_.adjoint()).norm();
  if (asym > 1e-10 * std::max(1.0, g_.norm())) {
    throw Error(Errc::InvalidInput, "Gram matrix is not Hermitian");
  }
  symmetrize(g_);
  if (field_ == Field::Real) g_ = g_.real().cast<cplx>();
}

// ---------------------------------------------------------------------------
// Angles and distances

PrincipalAngles principal_angles(const CMatrix& s, const CMatrix& t) {
  if (s.rows() != t.rows() || s.cols() != t.cols() || s.cols() < 1) {
    throw Error(Errc::InvalidInput, "principal_angles: frames must share shape d x K");
  }
  check_frame(s, 1e-8, "principal_angles");
  check_frame(t, 1e-8, "principal_angles");
  const RVector cosines = singular_values<cplx>(s.adjoint() * t);
  PrincipalAngles out{RVector(cosines.size())};
  for (Index k = 0; k < cosines.size(); ++k) {
    out.angles(k) = std::acos(clamp_unit(cosines(k)));
  }
  return out;
}

namespace {

// All four subspace metrics are functions of the cosines of the principal
// angles, i.e. the singular values of S*T.
double dist_from_cosines(const RVector& cosines, Metric metric) {
  switch (metric) {
    case Metric::Chordal: {
      double sum = 0.0;
      for (Index k = 0; k < cosines.size(); ++k) {
        const double s = std::sin(std::acos(clamp_unit(cosines(k))));
        sum += s * s;
      }
      return std::sqrt(sum);
    }
    case Metric::Spectral:
      // smallest angle pairs with the largest cosine
      return std::sin(std::acos(clamp_unit(cosines(0))));
    case Metric::FubiniStudy: {
      double prod = 1.0;
      for (Index k = 0; k < cosines.size(); ++k) prod *= clamp_unit(cosines(k));
      return std::acos(clamp_unit(prod));
    }
    case Metric::Geodesic: {
      double sum = 0.0;
      for (Index k = 0; k < cosines.size(); ++k) {
        const double theta = std::acos(clamp_unit(cosines(k)));
        sum += theta * theta;
      }
      return std::sqrt(sum);
    }
    case Metric::Sphere:
      break;
  }
  throw Error(Errc::InvalidInput, "dist: the sphere metric applies to points, not subspaces");
}

}  // namespace

double dist(const CMatrix& s, const CMatrix& t, Metric metric) {
  if (metric == Metric::Sphere) {
    throw Error(Errc::InvalidInput, "dist: the sphere metric applies to points, not subspaces");
  }
  const PrincipalAngles pa = principal_angles(s, t);
  RVector cosines(pa.angles.size());
  for (Index k = 0; k < cosines.size(); ++k) cosines(k) = std::cos(pa.angles(k));
  return dist_from_cosines(cosines, metric);
}

double packing_diameter(const Configuration& config, Metric metric) {
  const Index n_sub = config.N();
  double best = std::numeric_limits<double>::infinity();
  if (metric == Metric::Sphere) {
    if (config.K() != 1 || config.field() != Field::Real) {
      throw Error(Errc::InvalidInput, "sphere packing diameter needs real points (K = 1)");
    }
    const CMatrix& x = config.matrix();
    for (Index m = 0; m < n_sub; ++m) {
      for (Index n = m + 1; n < n_sub; ++n) {
        const double ip = std::clamp(x.col(m).dot(x.col(n)).real(), -1.0, 1.0);
        best = std::min(best, std::acos(ip));
      }
    }
    return best;
  }
  for (Index m = 0; m < n_sub; ++m) {
    const CMatrix xm = config.block(m);
    for (Index n = m + 1; n < n_sub; ++n) {
      best = std::min(best, dist(xm, config.block(n), metric));
    }
  }
  return best;
}

GramMatrix gram(const Configuration& config) {
  CMatrix g = config.matrix().adjoint() * config.matrix();
  symmetrize(g);
  return GramMatrix(config.field(), config.K(), config.N(), std::move(g));
}

Configuration factor(const GramMatrix& g, Index d) {
  const Index k = g.K();
  const Index n_sub = g.N();
  const Index kn = k * n_sub;
  if (d < k) {
    throw Error(Errc::InvalidInput, "factor: ambient dimension smaller than K");
  }
  for (Index n = 0; n < n_sub; ++n) {
    if ((g.block(n, n) - CMatrix::Identity(k, k)).norm() > 1e-6) {
      throw Error(Errc::InvalidInput, "factor: diagonal blocks are not the identity");
    }
  }

  RVector lambda;
  CMatrix u;
  if (g.field() == Field::Real) {
    const auto eig = hermitian_eig<double>(g.entries().real());
    lambda = eig.eigenvalues;
    u = eig.eigenvectors.cast<cplx>();
  } else {
    const auto eig = hermitian_eig<cplx>(g.entries());
    lambda = eig.eigenvalues;
    u = eig.eigenvectors;
  }
  const double top = std::max(lambda(0), 0.0);
  if (lambda(kn - 1) < -1e-8 * top) {
    throw Error(Errc::NotPSD, "factor: Gram matrix is indefinite (lambda_min = " +
                                  std::to_string(lambda(kn - 1)) + ")");
  }
  if (d < kn && lambda(d) > 1e-6 * top) {
    throw Error(Errc::RankExceeded, "factor: numerical rank exceeds d (lambda_{d+1} = " +
                                        std::to_string(lambda(d)) + ")");
  }

  const Index r = std::min(d, kn);
  CMatrix x = CMatrix::Zero(d, kn);
  for (Index j = 0; j < r; ++j) {
    x.row(j) = std::sqrt(std::max(lambda(j), 0.0)) * u.col(j).adjoint();
  }
  for (Index n = 0; n < n_sub; ++n) {
    if (g.field() == Field::Real) {
      const RMatrix q = qr_orthonormal<double>(x.middleCols(n * k, k).real());
      x.middleCols(n * k, k) = q.cast<cplx>();
    } else {
      x.middleCols(n * k, k) = qr_orthonormal<cplx>(x.middleCols(n * k, k));
    }
  }
  return Configuration::from_matrix(g.field(), k, std::move(x));
}

// ---------------------------------------------------------------------------
// Block magnitudes

template <class Scalar>
double block_magnitude(const Mat<Scalar>& block, Metric metric) {
  switch (metric) {
    case Metric::Chordal:
      return block.norm();
    case Metric::Spectral:
      return singular_values<Scalar>(block)(0);
    case Metric::FubiniStudy: {
      const RVector sv = singular_values<Scalar>(block);
      return sv.prod();
    }
    case Metric::Sphere:
      if (block.rows() != 1 || block.cols() != 1) {
        throw Error(Errc::InvalidInput, "sphere magnitude needs 1x1 blocks");
      }
      return std::real(block(0, 0));
    case Metric::Geodesic:
      break;
  }
  throw Error(Errc::InvalidInput, "no block magnitude for the geodesic metric");
}

template <class Scalar>
double max_block_magnitude(const Mat<Scalar>& g, Index K, Metric metric) {
  const Index n_sub = g.rows() / K;
  double best = -std::numeric_limits<double>::infinity();
  for (Index m = 0; m < n_sub; ++m) {
    for (Index n = m + 1; n < n_sub; ++n) {
      const Mat<Scalar> blk = g.block(m * K, n * K, K, K);
      best = std::max(best, block_magnitude<Scalar>(blk, metric));
    }
  }
  return best;
}

double max_block_magnitude(const GramMatrix& g, Metric metric) {
  if (g.N() < 2) {
    throw Error(Errc::InvalidInput, "max_block_magnitude needs N >= 2");
  }
  if (g.field() == Field::Real) {
    return max_block_magnitude<double>(g.entries().real(), g.K(), metric);
  }
  return max_block_magnitude<cplx>(g.entries(), g.K(), metric);
}

template double block_magnitude<double>(const Mat<double>&, Metric);
template double block_magnitude<cplx>(const Mat<cplx>&, Metric);
template double max_block_magnitude<double>(const Mat<double>&, Index, Metric);
template double max_block_magnitude<cplx>(const Mat<cplx>&, Index, Metric);

}  // namespace grasspack
