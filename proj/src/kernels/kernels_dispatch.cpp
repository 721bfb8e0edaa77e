#include <atomic>
#include <cstdlib>
#include <string>

#include "grasspack/error.hpp"
#include "grasspack/kernels.hpp"

namespace grasspack::kernels {

namespace {

struct Table {
  double (*squared_distance)(const double*, const double*, std::size_t) noexcept;
  double (*clamp_range)(double*, std::size_t, double, double) noexcept;
  double (*cap_abs)(double*, std::size_t, double) noexcept;
  double (*cap_modulus)(double*, std::size_t, double) noexcept;
};

constexpr Table kScalar{&scalar::squared_distance, &scalar::clamp_range, &scalar::cap_abs,
                        &scalar::cap_modulus};
constexpr Table kAvx2{&avx2::squared_distance, &avx2::clamp_range, &avx2::cap_abs,
                      &avx2::cap_modulus};

bool detect_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  const bool have = detect_avx2();
  if (const char* env = std::getenv("GRASSPACK_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && have) return Isa::Avx2;
  }
  return have ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& table() noexcept {
  return current().load(std::memory_order_relaxed) == Isa::Avx2 ? kAvx2 : kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_supported() noexcept {
  static const bool have = detect_avx2();
  return have;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) {
    throw Error(Errc::InvalidInput, "AVX2 kernels requested on a CPU without AVX2/FMA");
  }
  current().store(isa, std::memory_order_relaxed);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::InvalidInput, "squared_distance: length mismatch");
  }
  return table().squared_distance(a.data(), b.data(), a.size());
}

double clamp_range(std::span<double> x, double lo, double hi) {
  return table().clamp_range(x.data(), x.size(), lo, hi);
}

double cap_abs(std::span<double> x, double cap) {
  return table().cap_abs(x.data(), x.size(), cap);
}

double cap_modulus(std::span<double> interleaved, double cap) {
  if (interleaved.size() % 2 != 0) {
    throw Error(Errc::InvalidInput, "cap_modulus: odd length for interleaved complex data");
  }
  return table().cap_modulus(interleaved.data(), interleaved.size() / 2, cap);
}

}  // namespace grasspack::kernels
