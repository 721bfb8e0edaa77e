#pragma once

// Elementwise kernels on the hot path of the alternating projection.
//
// Each kernel has a portable scalar reference and an AVX2 variant; the active
// variant is chosen once at startup from CPUID and can be pinned with the
// GRASSPACK_SIMD environment variable ("scalar", "avx2" or "auto"). Complex
// data is passed as interleaved (re, im) doubles, which is the layout of
// std::complex<double> arrays.

#include <cstddef>
#include <span>
#include <string_view>

namespace grasspack::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

bool avx2_supported() noexcept;
Isa active_isa() noexcept;
/// Throws InvalidInput when the requested ISA is not available on this CPU.
void set_isa(Isa isa);

/// sum_i (a_i - b_i)^2
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Clamps every entry into [lo, hi]; returns the largest entry seen before clamping.
double clamp_range(std::span<double> x, double lo, double hi);

/// Clamps every entry into [-cap, cap]; returns the largest |x_i| seen before clamping.
double cap_abs(std::span<double> x, double cap);

/// Rescales every complex entry with modulus above cap onto the circle of radius cap,
/// phase preserved. Returns the largest modulus seen before rescaling.
double cap_modulus(std::span<double> interleaved, double cap);

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
double clamp_range(double* x, std::size_t n, double lo, double hi) noexcept;
double cap_abs(double* x, std::size_t n, double cap) noexcept;
double cap_modulus(double* x, std::size_t n_complex, double cap) noexcept;
}  // namespace scalar

namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
double clamp_range(double* x, std::size_t n, double lo, double hi) noexcept;
double cap_abs(double* x, std::size_t n, double cap) noexcept;
double cap_modulus(double* x, std::size_t n_complex, double cap) noexcept;
}  // namespace avx2

}  // namespace grasspack::kernels
