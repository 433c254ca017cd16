#pragma once

#include <stdexcept>

#include "paraconv/vec3.hpp"

namespace paraconv {

/// Raised when an input leaves the physical domain of an operation
/// (wavelength outside the dispersion window, negative length, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// n²(λ) = b0 + b1/(λ² − b2) − b3·λ², λ in µm.
struct SellmeierSet {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;  ///< pole position, µm²
  double b3 = 0.0;

  double index_squared(double lambda_um) const noexcept {
    const double l2 = lambda_um * lambda_um;
    return b0 + b1 / (l2 - b2) - b3 * l2;
  }
};

struct WavelengthWindow {
  double min_um = 0.0;
  double max_um = 0.0;

  bool contains(double lambda_um) const noexcept {
    return lambda_um >= min_um && lambda_um <= max_um;
  }
};

/// Principal indices of a negative uniaxial crystal.
struct DispersionModel {
  SellmeierSet ordinary;
  SellmeierSet extraordinary;
  WavelengthWindow window;

  /// Checks the pole, n² > 1 and n_o > n_e across the window. Throws DomainError.
  void validate() const;
};

/// BBO, ordinary and extraordinary sets commonly attributed to Eimerl et al.
DispersionModel bbo_dispersion();

/// Polar angle from the inward face normal (z) and azimuth from the optic-axis meridian.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Vec3 unit() const {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
  }
  static Direction of(const Vec3& v);
};

double n_ordinary(const DispersionModel& model, double lambda_um);
double n_extraordinary_principal(const DispersionModel& model, double lambda_um);

/// Index-ellipsoid extraordinary index for a wave vector at angle psi to the optic axis.
double n_extraordinary(const DispersionModel& model, double lambda_um, double psi);

/// k = 2πn/λ in rad/µm.
double wavevector_magnitude(double n, double lambda_vac_um);

}  // namespace paraconv
