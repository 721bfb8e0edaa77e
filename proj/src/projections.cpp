#include "grasspack/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "grasspack/error.hpp"
#include "grasspack/kernels.hpp"

namespace grasspack {

namespace {

constexpr double kSingularFloor = 1e-12;
constexpr double kRoundoff = 1e-14;
constexpr int kGridPoints = 256;
constexpr int kMaxBisections = 200;

template <class Scalar>
std::span<double> as_doubles(Scalar* data, Index count) {
  return {reinterpret_cast<double*>(data),
          static_cast<std::size_t>(count) * (sizeof(Scalar) / sizeof(double))};
}

// Mirrors the strict upper triangle of column j onto row j.
template <class Scalar>
void mirror_column(Mat<Scalar>& g, Index j) {
  for (Index i = 0; i < j; ++i) {
    if constexpr (std::is_same_v<Scalar, double>) {
      g(j, i) = g(i, j);
    } else {
      g(j, i) = std::conj(g(i, j));
    }
  }
}

// K = 1: every metric's magnitude is |g_mn| (signed g_mn for Sphere), so the
// projection is an elementwise cap handled by the SIMD kernels column by column.
template <class Scalar>
double project_lines(Mat<Scalar>& g, const StructuralSetSpec& spec) {
  const Index n = g.rows();
  double seen = -std::numeric_limits<double>::infinity();
  for (Index j = 1; j < n; ++j) {
    auto segment = as_doubles(g.col(j).data(), j);
    double col_max;
    if (spec.metric == Metric::Sphere) {
      col_max = kernels::clamp_range(segment, -1.0, spec.mu);
    } else if constexpr (std::is_same_v<Scalar, double>) {
      col_max = kernels::cap_abs(segment, spec.mu);
    } else {
      col_max = kernels::cap_modulus(segment, spec.mu);
    }
    seen = std::max(seen, col_max);
    mirror_column(g, j);
  }
  for (Index i = 0; i < n; ++i) g(i, i) = Scalar(1.0);
  return seen;
}

template <class Scalar>
Mat<Scalar> rebuild(const Svd<Scalar>& f, const RVector& values) {
  return f.left * values.asDiagonal() * f.right.adjoint();
}

// Projects one off-diagonal block in place; returns its magnitude before projection.
template <class Scalar>
double project_block(Eigen::Block<Mat<Scalar>> blk, const StructuralSetSpec& spec) {
  switch (spec.metric) {
    case Metric::Chordal: {
      const double f = blk.norm();
      if (f > spec.mu + kRoundoff) blk *= spec.mu / f;
      return f;
    }
    case Metric::Spectral: {
      const Svd<Scalar> f = svd<Scalar>(blk);
      const double top = f.singulars(0);
      if (top > spec.mu + kRoundoff) {
        blk = rebuild(f, f.singulars.cwiseMin(spec.mu));
      }
      return top;
    }
    case Metric::FubiniStudy: {
      const Svd<Scalar> f = svd<Scalar>(blk);
      const double det = f.singulars.prod();
      if (det > spec.mu) {
        RVector values = f.singulars;
        if (spec.mu == 0.0) {
          // Nearest singular matrix: drop the smallest singular value.
          values(values.size() - 1) = 0.0;
        } else {
          const RVector c = values.cwiseMax(kSingularFloor);
          values = solve_fs_block(c, spec.mu).x.array().exp();
        }
        blk = rebuild(f, values);
      }
      return det;
    }
    case Metric::Geodesic:
    case Metric::Sphere:
      break;
  }
  throw Error(Errc::InvalidInput, "no structural projection for this metric and block size");
}

}  // namespace

void validate(const StructuralSetSpec& spec) {
  if (spec.K < 1 || spec.N < 2) {
    throw Error(Errc::InvalidInput, "structural set needs K >= 1 and N >= 2");
  }
  double lo = 0.0;
  double hi = 1.0;
  switch (spec.metric) {
    case Metric::Chordal: hi = std::sqrt(static_cast<double>(spec.K)); break;
    case Metric::Spectral:
    case Metric::FubiniStudy: break;
    case Metric::Sphere:
      if (spec.K != 1) throw Error(Errc::InvalidInput, "sphere packing needs K = 1");
      lo = -1.0;
      break;
    case Metric::Geodesic:
      throw Error(Errc::InvalidInput, "no structural projection for the geodesic metric");
  }
  if (!(spec.mu >= lo && spec.mu <= hi)) {
    throw Error(Errc::InvalidInput, "mu = " + std::to_string(spec.mu) + " outside [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) +
                                        "] for metric " + std::string(to_string(spec.metric)));
  }
}

void validate(const SpectralSetSpec& spec, Index dim) {
  if (spec.d < 1 || !(spec.trace_target > 0.0)) {
    throw Error(Errc::InvalidInput, "spectral set needs d >= 1 and a positive trace");
  }
  if (spec.d > dim) {
    throw Error(Errc::InvalidInput, "spectral set rank cap exceeds the matrix dimension");
  }
}

template <class Scalar>
double project_structural_inplace(Mat<Scalar>& g, const StructuralSetSpec& spec) {
  const Index k = spec.K;
  if (g.rows() != k * spec.N || g.cols() != k * spec.N) {
    throw Error(Errc::InvalidInput, "structural projection: matrix shape does not match K, N");
  }
  if (spec.metric == Metric::Sphere && !std::is_same_v<Scalar, double>) {
    throw Error(Errc::InvalidInput, "sphere packing is defined over the real field only");
  }
  if (k == 1) return project_lines(g, spec);

  double seen = 0.0;
  for (Index n = 1; n < spec.N; ++n) {
    for (Index m = 0; m < n; ++m) {
      seen = std::max(seen, project_block<Scalar>(g.block(m * k, n * k, k, k), spec));
      g.block(n * k, m * k, k, k) = g.block(m * k, n * k, k, k).adjoint();
    }
  }
  for (Index n = 0; n < spec.N; ++n) {
    g.block(n * k, n * k, k, k).setIdentity();
  }
  return seen;
}

template <class Scalar>
SpectralProjectionInfo project_spectral_inplace(Mat<Scalar>& h, const SpectralSetSpec& spec) {
  validate(spec, h.rows());
  const HermitianEig<Scalar> eig = hermitian_eig<Scalar>(h);
  const RVector& lambda = eig.eigenvalues;
  const Index d = spec.d;
  const double target = spec.trace_target;

  auto excess = [&](double gamma) {
    double sum = 0.0;
    for (Index j = 0; j < d; ++j) sum += std::max(lambda(j) - gamma, 0.0);
    return sum - target;
  };

  // Trace is nonincreasing in gamma: positive at lo, equal to -target at hi.
  double lo = lambda(0) - target - 1.0;
  double hi = lambda(0);
  double gamma = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < kMaxBisections; ++it) {
    gamma = 0.5 * (lo + hi);
    const double e = excess(gamma);
    if (std::abs(e) <= 1e-12 * target) {
      converged = true;
      break;
    }
    (e > 0.0 ? lo : hi) = gamma;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(gamma))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(Errc::NumericalFailure, "spectral projection: shift bisection did not converge");
  }

  // Bisection pins the active set; solve for the shift on it exactly.
  Index rank = 0;
  double active_sum = 0.0;
  while (rank < d && lambda(rank) > gamma) active_sum += lambda(rank++);
  if (rank > 0) {
    const double exact = (active_sum - target) / static_cast<double>(rank);
    if (lambda(rank - 1) > exact && (rank == d || lambda(rank) <= exact)) gamma = exact;
  }

  RVector w(rank);
  for (Index j = 0; j < rank; ++j) w(j) = lambda(j) - gamma;
  const auto u = eig.eigenvectors.leftCols(rank);
  h.noalias() = (u * w.asDiagonal()) * u.adjoint();
  symmetrize(h);
  return {gamma, rank};
}

GramMatrix project_structural(const GramMatrix& g, const StructuralSetSpec& spec) {
  validate(spec);
  if (g.K() != spec.K || g.N() != spec.N) {
    throw Error(Errc::InvalidInput, "structural projection: Gram shape does not match the set parameters");
  }
  if (g.field() == Field::Real) {
    RMatrix m = g.entries().real();
    project_structural_inplace<double>(m, spec);
    return GramMatrix(g.field(), g.K(), g.N(), m.cast<cplx>());
  }
  CMatrix m = g.entries();
  project_structural_inplace<cplx>(m, spec);
  return GramMatrix(g.field(), g.K(), g.N(), std::move(m));
}

GramMatrix project_spectral(const GramMatrix& h, const SpectralSetSpec& spec) {
  if (h.field() == Field::Real) {
    RMatrix m = h.entries().real();
    project_spectral_inplace<double>(m, spec);
    return GramMatrix(h.field(), h.K(), h.N(), m.cast<cplx>());
  }
  CMatrix m = h.entries();
  project_spectral_inplace<cplx>(m, spec);
  return GramMatrix(h.field(), h.K(), h.N(), std::move(m));
}

// ---------------------------------------------------------------------------
// Fubini-Study block solve
//
// Stationarity of 1/2 ||y - c||^2 + nu (sum log y - log mu) in y = exp(x)
// gives y_k (c_k - y_k) = nu, so each y_k is one of the two roots
//   y_k = (c_k +- sqrt(c_k^2 - 4 nu)) / 2,   0 <= nu <= min_k c_k^2 / 4.
// On the constraint surface the curvature along x_k is y_k (2 y_k - c_k),
// negative on the small root, so a local minimiser has at most one small
// root. We scan the K + 1 branch patterns for roots of
//   h(nu) = sum_k log y_k(nu) - log mu
// and keep the KKT point with the smallest objective.
//
// The scan variable is s = sqrt(c_min^2 - 4 nu) in [0, c_min], which removes
// the square-root singularity at nu = c_min^2 / 4.

namespace {

struct Branch {
  const RVector& c;
  double c_min;
  Index small;  // index on the small root, or -1

  double nu(double s) const { return 0.25 * (c_min - s) * (c_min + s); }

  double root(Index k, double s) const {
    const double ck = c(k);
    const double disc = std::sqrt(std::max(0.0, ck * ck - c_min * c_min + s * s));
    const double large = 0.5 * (ck + disc);
    if (k != small) return large;
    return nu(s) / large;  // product of the roots is nu
  }

  double h(double s, double log_mu) const {
    double sum = -log_mu;
    for (Index k = 0; k < c.size(); ++k) {
      const double y = root(k, s);
      if (!(y > 0.0)) return -std::numeric_limits<double>::infinity();
      sum += std::log(y);
    }
    return sum;
  }
};

}  // namespace

FsBlockSolution solve_fs_block(const RVector& c_in, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw Error(Errc::InvalidInput, "solve_fs_block needs mu in (0, 1]");
  }
  if (c_in.size() < 1) {
    throw Error(Errc::InvalidInput, "solve_fs_block needs at least one singular value");
  }
  const RVector c = c_in.cwiseMax(kSingularFloor);
  if (!(c.prod() > mu)) {
    throw Error(Errc::InvalidInput, "solve_fs_block: constraint already satisfied");
  }
  const double log_mu = std::log(mu);
  const double c_min = c.minCoeff();
  const Index kdim = c.size();

  FsBlockSolution best;
  best.objective = std::numeric_limits<double>::infinity();

  for (Index small = -1; small < kdim; ++small) {
    const Branch br{c, c_min, small};
    double s_prev = 0.0;
    double h_prev = br.h(s_prev, log_mu);
    for (int i = 1; i <= kGridPoints; ++i) {
      const double s_cur = c_min * static_cast<double>(i) / kGridPoints;
      const double h_cur = br.h(s_cur, log_mu);
      if ((h_prev <= 0.0) != (h_cur <= 0.0)) {
        // Bisect keeping `feasible` on the h <= 0 side.
        double feasible = h_prev <= 0.0 ? s_prev : s_cur;
        double other = h_prev <= 0.0 ? s_cur : s_prev;
        for (int it = 0; it < kMaxBisections; ++it) {
          const double mid = 0.5 * (feasible + other);
          if (mid == feasible || mid == other) break;
          (br.h(mid, log_mu) <= 0.0 ? feasible : other) = mid;
        }
        RVector y(kdim);
        for (Index k = 0; k < kdim; ++k) y(k) = br.root(k, feasible);
        if ((y.array() > 0.0).all()) {
          const double obj = 0.5 * (y - c).squaredNorm();
          if (obj < best.objective) {
            best.objective = obj;
            best.x = y.array().log();
            best.nu = br.nu(feasible);
            best.kkt_residual = 0.0;
            for (Index k = 0; k < kdim; ++k) {
              best.kkt_residual =
                  std::max(best.kkt_residual, std::abs(y(k) * (c(k) - y(k)) - best.nu));
            }
          }
        }
      }
      s_prev = s_cur;
      h_prev = h_cur;
    }
  }
  if (!std::isfinite(best.objective)) {
    throw Error(Errc::NumericalFailure, "solve_fs_block: no KKT point bracketed");
  }
  return best;
}

template double project_structural_inplace<double>(Mat<double>&, const StructuralSetSpec&);
template double project_structural_inplace<cplx>(Mat<cplx>&, const StructuralSetSpec&);
template SpectralProjectionInfo project_spectral_inplace<double>(Mat<double>&,
                                                                 const SpectralSetSpec&);
template SpectralProjectionInfo project_spectral_inplace<cplx>(Mat<cplx>&,
                                                               const SpectralSetSpec&);

}  // namespace grasspack
