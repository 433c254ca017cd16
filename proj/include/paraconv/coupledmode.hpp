#pragma once

#include <complex>

namespace paraconv {

/// Coupling strengths of the two vacuum-fed modes to the constant pump.
struct CouplingConstants {
  double beta1 = 0.0;
  double beta3 = 0.0;
};

/// Input amplitudes of one mode pair. The pump is held constant (linearization)
/// and enters only through its intensity; its phase is taken real positive.
struct ModePairState {
  std::complex<double> a1;
  std::complex<double> a3;
  double pump_intensity = 0.0;
  double mismatch = 0.0;  ///< rad/um
  double length_um = 0.0;
};

struct GainResult {
  double delta_i1 = 0.0;
  double delta_i3 = 0.0;
  double effective_mismatch = 0.0;
};

struct ModeAmplitudes {
  std::complex<double> a1;
  std::complex<double> a3;
};

/// sin(x)/x, series near the removable singularity.
double sinc(double x);

/// sqrt(delta^2 + beta1 * I2 * beta3).
double effective_mismatch(double delta, double beta1, double beta3, double pump_intensity);

/// Closed-form intensity changes after a crystal of depth l:
///   dI1 = beta3 I2 l^2 (beta3 I1 - beta1 I3) sinc^2(delta' l / 2)
///   dI3 = beta1 I2 l^2 (beta1 I3 - beta3 I1) sinc^2(delta' l / 2)
/// Implemented in exactly this form, so beta1 dI1 + beta3 dI3 == 0.
GainResult linearized_gain(const ModePairState& state, const CouplingConstants& c);

/// Fixed-step classical RK4 integration of
///   dA1/dz = i beta1 A2 e^{i delta z} A3,   dA3/dz = i beta3 A2* e^{-i delta z} A1
/// from z = 0 to l, with A2 = sqrt(I2). Throws DomainError for steps < 2.
ModeAmplitudes ode_oracle(const ModePairState& state, const CouplingConstants& c, int steps = 10000);

}  // namespace paraconv
