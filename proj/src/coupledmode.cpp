#include "paraconv/coupledmode.hpp"

#include <cmath>

#include <fmt/format.h>

#include "paraconv/dispersion.hpp"

namespace paraconv {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double effective_mismatch(double delta, double beta1, double beta3, double pump_intensity) {
  return std::sqrt(delta * delta + beta1 * pump_intensity * beta3);
}

GainResult linearized_gain(const ModePairState& state, const CouplingConstants& c) {
  const double i1 = std::norm(state.a1);
  const double i3 = std::norm(state.a3);
  const double l = state.length_um;
  const double dp = effective_mismatch(state.mismatch, c.beta1, c.beta3, state.pump_intensity);
  const double s = sinc(0.5 * dp * l);
  const double envelope = state.pump_intensity * l * l * s * s;
  const double exchange = c.beta3 * i1 - c.beta1 * i3;
  return GainResult{
      .delta_i1 = c.beta3 * envelope * exchange,
      .delta_i3 = -c.beta1 * envelope * exchange,
      .effective_mismatch = dp,
  };
}

ModeAmplitudes ode_oracle(const ModePairState& state, const CouplingConstants& c, int steps) {
  if (steps < 2) throw DomainError(fmt::format("ode_oracle needs at least 2 steps, got {}", steps));
  using cd = std::complex<double>;
  constexpr cd i{0.0, 1.0};
  const double a2 = std::sqrt(state.pump_intensity);
  const double delta = state.mismatch;

  auto rhs = [&](double z, const ModeAmplitudes& a) {
    const cd phase = std::polar(1.0, delta * z);
    return ModeAmplitudes{i * c.beta1 * a2 * phase * a.a3, i * c.beta3 * a2 * std::conj(phase) * a.a1};
  };
  auto axpy = [](const ModeAmplitudes& a, double h, const ModeAmplitudes& k) {
    return ModeAmplitudes{a.a1 + h * k.a1, a.a3 + h * k.a3};
  };

  const double h = state.length_um / steps;
  ModeAmplitudes a{state.a1, state.a3};
  for (int n = 0; n < steps; ++n) {
    const double z = n * h;
    const auto k1 = rhs(z, a);
    const auto k2 = rhs(z + 0.5 * h, axpy(a, 0.5 * h, k1));
    const auto k3 = rhs(z + 0.5 * h, axpy(a, 0.5 * h, k2));
    const auto k4 = rhs(z + h, axpy(a, h, k3));
    a.a1 += (h / 6.0) * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1);
    a.a3 += (h / 6.0) * (k1.a3 + 2.0 * k2.a3 + 2.0 * k3.a3 + k4.a3);
  }
  return a;
}

}  // namespace paraconv
