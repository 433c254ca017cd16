// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include <fmt/format.h>

#include "paraconv/dispersion.hpp"
#include "paraconv/kernels.hpp"

namespace paraconv::kernels::avx2 {
namespace {

// Cody-Waite reduction by pi/4 and the Cephes minimax polynomials.
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;
constexpr double kFourOverPi = 1.27323954473516268615;
// Beyond this the reduction above loses bits; such blocks go through the scalar path.
constexpr double kMaxArgument = 1.0e8;
constexpr double kSeriesCutoff = 1e-4;

inline __m256d horner(__m256d x, const double (&c)[6]) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int k = 1; k < 6; ++k) r = _mm256_add_pd(_mm256_mul_pd(r, x), _mm256_set1_pd(c[k]));
  return r;
}

// sin(x) for 0 <= x <= kMaxArgument.
inline __m256d sin_nonneg(__m256d x) {
  static constexpr double sincof[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                                       2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                                       8.33333333332211858878e-3,  -1.66666666666666307295e-1};
  static constexpr double coscof[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                                       -2.75573141792967388112e-7, 2.48015872888517045348e-5,
                                       -1.38888888888730564116e-3, 4.16666666666665929218e-2};
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d eight = _mm256_set1_pd(8.0);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(x, _mm256_set1_pd(kFourOverPi)));
  __m256d j = _mm256_sub_pd(y, _mm256_mul_pd(eight, _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)))));
  const __m256d odd = _mm256_cmp_pd(
      _mm256_sub_pd(j, _mm256_mul_pd(two, _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.5))))), one,
      _CMP_EQ_OQ);
  j = _mm256_add_pd(j, _mm256_and_pd(odd, one));
  y = _mm256_add_pd(y, _mm256_and_pd(odd, one));
  j = _mm256_sub_pd(j, _mm256_mul_pd(eight, _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.125)))));

  const __m256d upper = _mm256_cmp_pd(j, _mm256_set1_pd(3.0), _CMP_GT_OQ);
  j = _mm256_sub_pd(j, _mm256_and_pd(upper, four));

  __m256d z = _mm256_sub_pd(x, _mm256_mul_pd(y, _mm256_set1_pd(kDP1)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDP2)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDP3)));
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d cos_branch =
      _mm256_or_pd(_mm256_cmp_pd(j, one, _CMP_EQ_OQ), _mm256_cmp_pd(j, two, _CMP_EQ_OQ));
  const __m256d c = _mm256_add_pd(_mm256_sub_pd(one, _mm256_mul_pd(_mm256_set1_pd(0.5), zz)),
                                  _mm256_mul_pd(_mm256_mul_pd(zz, zz), horner(zz, coscof)));
  const __m256d s = _mm256_add_pd(z, _mm256_mul_pd(z, _mm256_mul_pd(zz, horner(zz, sincof))));
  __m256d r = _mm256_blendv_pd(s, c, cos_branch);

  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  return _mm256_xor_pd(r, _mm256_and_pd(upper, sign_bit));
}

// sinc(x)^2; sinc is even so only |x| matters.
inline __m256d sinc2_vec(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const __m256d small = _mm256_cmp_pd(ax, _mm256_set1_pd(kSeriesCutoff), _CMP_LT_OQ);
  const __m256d x2 = _mm256_mul_pd(ax, ax);
  const __m256d series = _mm256_add_pd(
      _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_div_pd(x2, _mm256_set1_pd(6.0))),
      _mm256_div_pd(_mm256_mul_pd(x2, x2), _mm256_set1_pd(120.0)));
  const __m256d safe = _mm256_blendv_pd(ax, _mm256_set1_pd(1.0), small);
  const __m256d ratio = _mm256_div_pd(sin_nonneg(safe), safe);
  const __m256d v = _mm256_blendv_pd(ratio, series, small);
  return _mm256_mul_pd(v, v);
}

inline bool in_range(__m256d ax) {
  const __m256d bad = _mm256_cmp_pd(ax, _mm256_set1_pd(kMaxArgument), _CMP_NLE_UQ);
  return _mm256_movemask_pd(bad) == 0;
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

void sinc2(std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw DomainError("sinc2: input and output sizes differ");
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    if (in_range(_mm256_andnot_pd(_mm256_set1_pd(-0.0), v))) {
      _mm256_storeu_pd(out.data() + i, sinc2_vec(v));
    } else {
      scalar::sinc2(x.subspan(i, 4), out.subspan(i, 4));
    }
  }
  if (i < n) scalar::sinc2(x.subspan(i), out.subspan(i));
}

double sinc2_simpson(const SincQuadrature& q) {
  if (q.points < 3 || q.points % 2 == 0) {
    throw DomainError(fmt::format("Simpson rule needs an odd node count >= 3, got {}", q.points));
  }
  const std::size_t n = q.points;
  const double w = q.half_width;
  const double h = 2.0 * w / static_cast<double>(n - 1);
  auto node = [&](std::size_t i) {
    const double delta = -w + static_cast<double>(i) * h;
    return 0.5 * std::sqrt(delta * delta + q.coupling) * q.length_um;
  };

  const __m256d vw = _mm256_set1_pd(-w);
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vc = _mm256_set1_pd(q.coupling);
  const __m256d vl = _mm256_set1_pd(0.5 * q.length_um);
  // Even index -> weight 2, odd -> 4; the two end nodes are fixed up afterwards.
  const __m256d weights = _mm256_setr_pd(2.0, 4.0, 2.0, 4.0);

  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double base = static_cast<double>(i);
    const __m256d idx = _mm256_setr_pd(base, base + 1.0, base + 2.0, base + 3.0);
    const __m256d delta = _mm256_add_pd(vw, _mm256_mul_pd(idx, vh));
    const __m256d x = _mm256_mul_pd(
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(delta, delta), vc)), vl);
    __m256d f;
    if (in_range(x)) {
      f = sinc2_vec(x);
    } else {
      alignas(32) double xs[4];
      alignas(32) double fs[4];
      _mm256_store_pd(xs, x);
      scalar::sinc2(xs, fs);
      f = _mm256_load_pd(fs);
    }
    acc = _mm256_add_pd(acc, _mm256_mul_pd(weights, f));
  }
  for (; i < n; ++i) {
    double xs[1] = {node(i)};
    double fs[1];
    scalar::sinc2(xs, fs);
    tail += (i % 2 == 1 ? 4.0 : 2.0) * fs[0];
  }

  double ends_x[2] = {node(0), node(n - 1)};
  double ends_f[2];
  sinc2(std::span<const double>(ends_x), std::span<double>(ends_f));
  const double sum = hsum(acc) + tail - ends_f[0] - ends_f[1];
  return sum * h / 3.0;
}

}  // namespace paraconv::kernels::avx2
