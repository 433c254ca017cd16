#include "paraconv/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace paraconv {
namespace {

void require_in_window(const DispersionModel& model, double lambda_um) {
  if (!(lambda_um > 0.0) || !model.window.contains(lambda_um)) {
    throw DomainError(fmt::format("wavelength {} um is outside the dispersion window [{}, {}] um",
                                  lambda_um, model.window.min_um, model.window.max_um));
  }
}

}  // namespace

void DispersionModel::validate() const {
  if (!(window.min_um > 0.0) || !(window.max_um > window.min_um)) {
    throw DomainError(fmt::format("invalid validity window [{}, {}] um", window.min_um, window.max_um));
  }
  const double lmin2 = window.min_um * window.min_um;
  if (ordinary.b2 >= lmin2 || extraordinary.b2 >= lmin2) {
    throw DomainError("Sellmeier pole lies inside the validity window");
  }
  constexpr int samples = 512;
  for (int i = 0; i <= samples; ++i) {
    const double l = window.min_um + (window.max_um - window.min_um) * i / samples;
    const double no2 = ordinary.index_squared(l);
    const double ne2 = extraordinary.index_squared(l);
    if (!(no2 > 1.0) || !(ne2 > 1.0)) {
      throw DomainError(fmt::format("Sellmeier index squared drops to or below 1 at {} um", l));
    }
    if (!(no2 > ne2)) {
      throw DomainError(fmt::format("crystal is not negative uniaxial at {} um (n_o <= n_e)", l));
    }
  }
}

DispersionModel bbo_dispersion() {
  return DispersionModel{
      .ordinary = {2.7405, 0.0184, 0.0179, 0.0155},
      .extraordinary = {2.3730, 0.0128, 0.0156, 0.0044},
      .window = {0.22, 2.6},
  };
}

Direction Direction::of(const Vec3& v) {
  const double theta = std::atan2(std::hypot(v.x, v.y), v.z);
  double phi = std::atan2(v.y, v.x);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {theta, phi};
}

double n_ordinary(const DispersionModel& model, double lambda_um) {
  require_in_window(model, lambda_um);
  return std::sqrt(model.ordinary.index_squared(lambda_um));
}

double n_extraordinary_principal(const DispersionModel& model, double lambda_um) {
  require_in_window(model, lambda_um);
  return std::sqrt(model.extraordinary.index_squared(lambda_um));
}

double n_extraordinary(const DispersionModel& model, double lambda_um, double psi) {
  constexpr double slack = 1e-12;
  if (!(psi >= -slack && psi <= std::numbers::pi + slack)) {
    throw DomainError(fmt::format("optic-axis angle {} rad outside [0, pi]", psi));
  }
  const double no = n_ordinary(model, lambda_um);
  const double ne = n_extraordinary_principal(model, lambda_um);
  const double s = std::sin(psi);
  const double c = std::cos(psi);
  if (s == 0.0) return no;
  if (c == 0.0) return ne;
  return no * ne / std::sqrt(ne * ne * c * c + no * no * s * s);
}

double wavevector_magnitude(double n, double lambda_vac_um) {
  if (!(lambda_vac_um > 0.0)) {
    throw DomainError(fmt::format("vacuum wavelength must be positive, got {} um", lambda_vac_um));
  }
  return 2.0 * std::numbers::pi * n / lambda_vac_um;
}

}  // namespace paraconv
