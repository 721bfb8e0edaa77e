#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "grasspack/config_io.hpp"
#include "grasspack/harness.hpp"
#include "grasspack/linalg.hpp"

namespace grasspack {

Evaluation evaluate(const Configuration& config) {
  Evaluation ev{config.field(), config.d(), config.K(), config.N(), {}};
  const GramMatrix g = gram(config);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (Metric m : {Metric::Chordal, Metric::Spectral, Metric::FubiniStudy, Metric::Geodesic}) {
    const double mag = m == Metric::Geodesic ? nan : max_block_magnitude(g, m);
    ev.metrics.push_back({m, packing_diameter(config, m), mag});
  }
  if (config.K() == 1) {
    const double mu = max_block_magnitude(g, Metric::Chordal);
    ev.line_angle_degrees = std::acos(std::min(mu, 1.0)) * 180.0 / std::numbers::pi;
    if (config.field() == Field::Real) {
      const double diam = packing_diameter(config, Metric::Sphere);
      ev.metrics.push_back({Metric::Sphere, diam, max_block_magnitude(g, Metric::Sphere)});
      ev.sphere_angle_degrees = diam * 180.0 / std::numbers::pi;
    }
  }
  const RVector lambda = hermitian_eigenvalues<cplx>(g.entries());
  ev.gram_lambda_max = lambda(0);
  ev.gram_lambda_min = lambda(lambda.size() - 1);
  return ev;
}

Evaluation evaluate_file(const std::filesystem::path& path) {
  return evaluate(read_configuration(path));
}

std::string format_evaluation(const Evaluation& ev) {
  std::string out = fmt::format("field {}  d {}  K {}  N {}\n", to_string(ev.field), ev.d, ev.K, ev.N);
  out += fmt::format("{:<14}{:>26}{:>26}\n", "metric", "packing_diameter", "max_block_magnitude");
  for (const MetricSummary& m : ev.metrics) {
    out += fmt::format("{:<14}{:>26.17g}{:>26}\n", to_string(m.metric), m.diameter,
                       std::isnan(m.max_block_magnitude) ? std::string("-")
                                                         : fmt::format("{:.17g}", m.max_block_magnitude));
  }
  if (!std::isnan(ev.line_angle_degrees)) {
    out += fmt::format("line angle (degrees) {:.17g}\n", ev.line_angle_degrees);
  }
  if (!std::isnan(ev.sphere_angle_degrees)) {
    out += fmt::format("sphere angle (degrees) {:.17g}\n", ev.sphere_angle_degrees);
  }
  out += fmt::format("gram eigenvalues: min {:.17g}  max {:.17g}\n", ev.gram_lambda_min,
                     ev.gram_lambda_max);
  return out;
}

}  // namespace grasspack
