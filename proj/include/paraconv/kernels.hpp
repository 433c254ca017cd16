#pragma once

// Data-parallel inner loops of the mode sum. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant chosen at runtime. The variants
// agree to a few ulp (tests/test_kernels.cpp); the summation order differs.

#include <cstddef>
#include <span>
#include <string_view>

namespace paraconv::kernels {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa);
bool available(Isa isa);

/// Kernel set in use. Defaults to the best available one; the PARACONV_KERNEL
/// environment variable ("scalar" or "avx2") overrides it on first use.
Isa active();

/// Throws std::invalid_argument if the ISA is not available on this machine.
void select(Isa isa);

/// Integral over delta in [-half_width, half_width] of
///   sinc^2( sqrt(delta^2 + coupling) * length_um / 2 )
/// by composite Simpson on `points` equally spaced nodes (odd, >= 3).
struct SincQuadrature {
  double half_width = 0.0;
  std::size_t points = 2001;
  double coupling = 0.0;
  double length_um = 0.0;
};

double sinc2_simpson(const SincQuadrature& q);

/// out[i] = sinc(x[i])^2. Spans must have equal size.
void sinc2(std::span<const double> x, std::span<double> out);

namespace scalar {
double sinc2_simpson(const SincQuadrature& q);
void sinc2(std::span<const double> x, std::span<double> out);
}  // namespace scalar

#if defined(PARACONV_HAVE_AVX2)
namespace avx2 {
double sinc2_simpson(const SincQuadrature& q);
void sinc2(std::span<const double> x, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace paraconv::kernels
