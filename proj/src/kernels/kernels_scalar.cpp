#include <cmath>

#include "grasspack/kernels.hpp"

namespace grasspack::kernels::scalar {

double squared_distance(const double* a, const double* b, std::size_t n) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double clamp_range(double* x, std::size_t n, double lo, double hi) noexcept {
  double seen = -HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    seen = v > seen ? v : seen;
    x[i] = v < lo ? lo : (v > hi ? hi : v);
  }
  return seen;
}

double cap_abs(double* x, std::size_t n, double cap) noexcept {
  double seen = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double mag = std::fabs(v);
    seen = mag > seen ? mag : seen;
    x[i] = v < -cap ? -cap : (v > cap ? cap : v);
  }
  return seen;
}

double cap_modulus(double* x, std::size_t n_complex, double cap) noexcept {
  double seen = 0.0;
  for (std::size_t i = 0; i < n_complex; ++i) {
    const double re = x[2 * i];
    const double im = x[2 * i + 1];
    const double mod = std::sqrt(re * re + im * im);
    seen = mod > seen ? mod : seen;
    if (mod > cap) {
      const double scale = cap / mod;
      x[2 * i] = re * scale;
      x[2 * i + 1] = im * scale;
    }
  }
  return seen;
}

}  // namespace grasspack::kernels::scalar
