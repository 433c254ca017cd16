#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "paraconv/kernels.hpp"

namespace paraconv::kernels {
namespace {

constexpr int kUnresolved = -1;
std::atomic<int> g_active{kUnresolved};

Isa resolve() {
  Isa best = available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("PARACONV_KERNEL")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && available(Isa::avx2)) return Isa::avx2;
  }
  return best;
}

}  // namespace

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(PARACONV_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active() {
  int v = g_active.load(std::memory_order_acquire);
  if (v == kUnresolved) {
    int expected = kUnresolved;
    g_active.compare_exchange_strong(expected, static_cast<int>(resolve()), std::memory_order_acq_rel);
    v = g_active.load(std::memory_order_acquire);
  }
  return static_cast<Isa>(v);
}

void select(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument("kernel set '" + std::string(name(isa)) + "' is not available on this CPU");
  }
  g_active.store(static_cast<int>(isa), std::memory_order_release);
}

double sinc2_simpson(const SincQuadrature& q) {
#if defined(PARACONV_HAVE_AVX2)
  if (active() == Isa::avx2) return avx2::sinc2_simpson(q);
#endif
  return scalar::sinc2_simpson(q);
}

void sinc2(std::span<const double> x, std::span<double> out) {
#if defined(PARACONV_HAVE_AVX2)
  if (active() == Isa::avx2) return avx2::sinc2(x, out);
#endif
  scalar::sinc2(x, out);
}

}  // namespace paraconv::kernels
