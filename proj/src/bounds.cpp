#include "grasspack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "grasspack/error.hpp"

namespace grasspack {

namespace {

void check_shape(long d, long K, long N) {
  if (K < 1 || K >= d) {
    throw Error(Errc::InvalidInput, "bound needs 1 <= K < d");
  }
  if (N < 2) {
    throw Error(Errc::InvalidInput, "bound needs N >= 2");
  }
}

long chordal_limit(long d, Field field) {
  return field == Field::Real ? d * (d + 1) / 2 : d * d;
}

double range_max(Metric metric, long K) {
  switch (metric) {
    case Metric::Chordal: return std::sqrt(static_cast<double>(K));
    case Metric::Spectral:
    case Metric::Sphere: return 1.0;
    case Metric::FubiniStudy: return std::numbers::pi / 2;
    case Metric::Geodesic: break;
  }
  throw Error(Errc::InvalidInput, "no feasibility parameter for the geodesic metric");
}

// sqrt(hi^2 - x^2), factored so that x = hi maps back to exactly 0.
double complement(double hi, double x) {
  return std::sqrt(std::max(0.0, (hi - x) * (hi + x)));
}

}  // namespace

BoundReport rankin_chordal(long d, long K, long N, Field field) {
  check_shape(d, K, N);
  BoundReport r;
  r.bound_value = static_cast<double>(K * (d - K)) / static_cast<double>(d) *
                  static_cast<double>(N) / static_cast<double>(N - 1);
  r.attainability_limit = chordal_limit(d, field);
  r.attainable = N <= r.attainability_limit;
  r.equidistance_implied = true;
  return r;
}

long lemmens_seidel_limit(long d, long K, Field field) {
  if (field == Field::Real) return d * (d + 1) / 2 - K * (K + 1) / 2 + 1;
  return d * d - K * K + 1;
}

BoundReport rankin_spectral(long d, long K, long N, Field field) {
  check_shape(d, K, N);
  BoundReport r;
  r.bound_value = static_cast<double>(d - K) / static_cast<double>(d) *
                  static_cast<double>(N) / static_cast<double>(N - 1);
  r.attainability_limit = lemmens_seidel_limit(d, K, field);
  r.attainable = N <= r.attainability_limit;
  r.equidistance_implied = true;
  return r;
}

BoundReport rankin_projective(long d, long N, Field field) {
  if (d < 2 || N < 2) {
    throw Error(Errc::InvalidInput, "projective bound needs d >= 2 and N >= 2");
  }
  BoundReport r;
  r.bound_value = static_cast<double>((d - 1) * N) / static_cast<double>(d * (N - 1));
  r.angle_degrees = std::asin(std::sqrt(std::min(r.bound_value, 1.0))) * 180.0 / std::numbers::pi;
  r.attainability_limit = chordal_limit(d, field);
  r.attainable = N <= r.attainability_limit;
  r.equidistance_implied = true;
  return r;
}

double mu_from_rho(double rho, Metric metric, long K) {
  const double hi = range_max(metric, K);
  if (!(rho >= 0.0 && rho <= hi)) {
    throw Error(Errc::InvalidInput, "rho = " + std::to_string(rho) + " outside [0, " +
                                        std::to_string(hi) + "] for metric " +
                                        std::string(to_string(metric)));
  }
  switch (metric) {
    case Metric::Chordal:
    case Metric::Spectral:
    case Metric::Sphere: return complement(hi, rho);
    case Metric::FubiniStudy: return std::cos(rho);
    case Metric::Geodesic: break;
  }
  throw Error(Errc::InvalidInput, "no feasibility parameter for the geodesic metric");
}

double rho_from_mu(double mu, Metric metric, long K) {
  const double hi = metric == Metric::FubiniStudy ? 1.0 : range_max(metric, K);
  if (!(mu >= 0.0 && mu <= hi)) {
    throw Error(Errc::InvalidInput, "mu = " + std::to_string(mu) + " outside [0, " +
                                        std::to_string(hi) + "] for metric " +
                                        std::string(to_string(metric)));
  }
  switch (metric) {
    case Metric::Chordal:
    case Metric::Spectral:
    case Metric::Sphere: return complement(hi, mu);
    case Metric::FubiniStudy: return std::acos(mu);
    case Metric::Geodesic: break;
  }
  throw Error(Errc::InvalidInput, "no feasibility parameter for the geodesic metric");
}

}  // namespace grasspack
