#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "paraconv/coupledmode.hpp"
#include "paraconv/dispersion.hpp"
#include "paraconv/kernels.hpp"

using namespace paraconv;
namespace k = paraconv::kernels;

namespace {

std::vector<double> probe_points() {
  std::vector<double> x = {0.0, -0.0, 1e-300, 1e-12, 5e-5, 9.9999e-5, 1e-4, 1.00001e-4, 0.5, 1.0,
                           std::numbers::pi, 2 * std::numbers::pi, 10.0, 100.5, 1e4, 1e6, 9.9e7, 1.1e8, 1e12};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  for (int i = 0; i < 4000; ++i) x.push_back(u(rng));
  for (int i = 0; i < 3; ++i) x.push_back(1e-7 * u(rng));  // odd count exercises the tail
  return x;
}

}  // namespace

TEST_CASE("scalar sinc^2 matches the coupled-mode sinc") {
  const auto x = probe_points();
  std::vector<double> out(x.size());
  k::scalar::sinc2(x, out);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = sinc(x[i]);
    CHECK(out[i] == s * s);
  }
}

#if defined(PARACONV_HAVE_AVX2)
TEST_CASE("AVX2 sinc^2 agrees with the scalar reference") {
  if (!k::available(k::Isa::avx2)) return;
  const auto x = probe_points();
  std::vector<double> ref(x.size()), simd(x.size());
  k::scalar::sinc2(x, ref);
  k::avx2::sinc2(x, simd);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CAPTURE(x[i]);
    const double tol = 8 * std::numeric_limits<double>::epsilon() * std::max(ref[i], 1.0 / (1.0 + x[i] * x[i]));
    CHECK(std::abs(simd[i] - ref[i]) <= tol);
  }
}

TEST_CASE("AVX2 Simpson agrees with the scalar reference") {
  if (!k::available(k::Isa::avx2)) return;
  for (std::size_t n : {3u, 5u, 7u, 9u, 2001u, 4001u}) {
    for (double coupling : {0.0, 1e-8, 0.5}) {
      const k::SincQuadrature q{100.0 / 1000.0, n, coupling, 1000.0};
      const double a = k::scalar::sinc2_simpson(q);
      const double b = k::avx2::sinc2_simpson(q);
      CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
    }
  }
}
#endif

TEST_CASE("dispatch") {
  CHECK(k::available(k::Isa::scalar));
  const auto before = k::active();
  k::select(k::Isa::scalar);
  CHECK(k::active() == k::Isa::scalar);
  CHECK(k::name(k::Isa::scalar) == "scalar");
  if (!k::available(k::Isa::avx2)) CHECK_THROWS_AS(k::select(k::Isa::avx2), std::invalid_argument);
  k::select(before);
}

TEST_CASE("Simpson rejects unusable grids") {
  CHECK_THROWS_AS(k::sinc2_simpson({1.0, 2000, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(k::sinc2_simpson({1.0, 1, 0.0, 1.0}), DomainError);
  std::vector<double> x(3), out(2);
  CHECK_THROWS(k::sinc2(x, out));
}

TEST_CASE("truncated sinc^2 integral approaches 2 pi / l") {
  for (double l : {10.0, 1000.0, 5000.0}) {
    const double exact = 2 * std::numbers::pi / l;
    double prev_err = 1.0;
    for (double w : {30.0, 60.0, 100.0, 200.0}) {
      const double v = k::sinc2_simpson({w / l, 20001, 0.0, l});
      const double err = std::abs(v - exact) / exact;
      CHECK(v < exact);
      CHECK(err < prev_err);
      prev_err = err;
    }
    // The two tails beyond |x| = X hold about 1/(pi X) of the total; X = 50 here.
    const double ratio = k::sinc2_simpson({100.0 / l, 2001, 0.0, l}) / exact;
    CHECK(ratio == doctest::Approx(1 - 1 / (50 * std::numbers::pi)).epsilon(5e-4));
  }
}
