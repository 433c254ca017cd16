#include <cmath>

#include <fmt/format.h>

#include "paraconv/coupledmode.hpp"
#include "paraconv/dispersion.hpp"
#include "paraconv/kernels.hpp"

namespace paraconv::kernels::scalar {

double sinc2_simpson(const SincQuadrature& q) {
  if (q.points < 3 || q.points % 2 == 0) {
    throw DomainError(fmt::format("Simpson rule needs an odd node count >= 3, got {}", q.points));
  }
  const std::size_t n = q.points;
  const double w = q.half_width;
  const double h = 2.0 * w / static_cast<double>(n - 1);
  auto f = [&](std::size_t i) {
    const double delta = -w + static_cast<double>(i) * h;
    const double s = paraconv::sinc(0.5 * std::sqrt(delta * delta + q.coupling) * q.length_um);
    return s * s;
  };
  double sum = f(0) + f(n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
  return sum * h / 3.0;
}

void sinc2(std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw DomainError("sinc2: input and output sizes differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = paraconv::sinc(x[i]);
    out[i] = s * s;
  }
}

}  // namespace paraconv::kernels::scalar
