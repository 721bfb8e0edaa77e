// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "grasspack/kernels.hpp"

namespace grasspack::kernels::avx2 {

namespace {

inline double horizontal_max(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double clamp_range(double* x, std::size_t n, double lo, double hi) noexcept {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  __m256d seen = _mm256_set1_pd(-HUGE_VAL);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    seen = _mm256_max_pd(seen, v);
    _mm256_storeu_pd(x + i, _mm256_max_pd(vlo, _mm256_min_pd(vhi, v)));
  }
  double s = horizontal_max(seen);
  for (; i < n; ++i) {
    const double v = x[i];
    s = v > s ? v : s;
    x[i] = v < lo ? lo : (v > hi ? hi : v);
  }
  return s;
}

double cap_abs(double* x, std::size_t n, double cap) noexcept {
  const __m256d vcap = _mm256_set1_pd(cap);
  const __m256d vneg = _mm256_set1_pd(-cap);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    seen = _mm256_max_pd(seen, _mm256_andnot_pd(sign, v));
    _mm256_storeu_pd(x + i, _mm256_max_pd(vneg, _mm256_min_pd(vcap, v)));
  }
  double s = horizontal_max(seen);
  for (; i < n; ++i) {
    const double v = x[i];
    const double mag = std::fabs(v);
    s = mag > s ? mag : s;
    x[i] = v < -cap ? -cap : (v > cap ? cap : v);
  }
  return s;
}

double cap_modulus(double* x, std::size_t n_complex, double cap) noexcept {
  const __m256d vcap = _mm256_set1_pd(cap);
  __m256d seen = _mm256_setzero_pd();
  const std::size_t n = 2 * n_complex;
  std::size_t i = 0;
  // Two complex numbers per register: (re0, im0, re1, im1).
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d mod = _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
    seen = _mm256_max_pd(seen, mod);
    const __m256d over = _mm256_cmp_pd(mod, vcap, _CMP_GT_OQ);
    const __m256d scaled = _mm256_mul_pd(v, _mm256_div_pd(vcap, mod));
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(v, scaled, over));
  }
  double s = horizontal_max(seen);
  for (; i < n; i += 2) {
    const double re = x[i];
    const double im = x[i + 1];
    const double mod = std::sqrt(re * re + im * im);
    s = mod > s ? mod : s;
    if (mod > cap) {
      const double scale = cap / mod;
      x[i] = re * scale;
      x[i + 1] = im * scale;
    }
  }
  return s;
}

}  // namespace grasspack::kernels::avx2
