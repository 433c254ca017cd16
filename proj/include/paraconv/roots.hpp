#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace paraconv {

struct BracketScan {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  double residual_tolerance = 1e-10;
  int max_iterations = 200;
};

/// Bisects a sign change of f on [a, b] down to adjacent doubles (or an exact zero).
/// Returns the endpoint with the smaller |f|.
template <class F>
double bisect(F&& f, double a, double b, double fa, int max_iterations) {
  double fb = f(b);
  for (int it = 0; it < max_iterations; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

/// Scans [lo, hi] on a uniform bracket grid and bisects every sign change.
/// Roots whose final |f| exceeds the tolerance (poles, jumps) are dropped.
template <class F>
std::vector<double> bracket_roots(F&& f, const BracketScan& scan) {
  std::vector<double> roots;
  const auto n = static_cast<std::size_t>(std::llround((scan.hi - scan.lo) / scan.step));
  double x0 = scan.lo;
  double f0 = f(x0);
  if (f0 == 0.0) roots.push_back(x0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x1 = i == n ? scan.hi : scan.lo + static_cast<double>(i) * scan.step;
    const double f1 = f(x1);
    if (f1 == 0.0) {
      roots.push_back(x1);
    } else if (f0 != 0.0 && std::isfinite(f0) && std::isfinite(f1) &&
               std::signbit(f0) != std::signbit(f1)) {
      const double r = bisect(f, x0, x1, f0, scan.max_iterations);
      if (std::abs(f(r)) <= scan.residual_tolerance) roots.push_back(r);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace paraconv
