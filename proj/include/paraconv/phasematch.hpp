#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "paraconv/dispersion.hpp"
#include "paraconv/roots.hpp"

namespace paraconv {

enum class Polarization { ordinary, extraordinary };

/// spdc: ultraviolet pump + vacuum infrared mode. spuc: infrared pump + vacuum ultraviolet mode.
enum class Process { spdc, spuc };

/// "spdc" or "spuc".
std::string_view to_string(Process p);
std::optional<Process> parse_process(std::string_view s);

struct CrystalSetup {
  DispersionModel model;
  double cut_angle = 0.0;  ///< optic axis vs inward face normal, rad
  double length_um = 0.0;
  double d_eff_pm_per_v = 2.0;

  void validate() const;
  Vec3 optic_axis() const { return {std::sin(cut_angle), 0.0, std::cos(cut_angle)}; }
};

/// BBO, 37 degree cut, 1 mm long.
CrystalSetup bbo_setup();

struct ModeSpec {
  double lambda_um = 0.0;
  Polarization polarization = Polarization::ordinary;
  Direction direction;
};

/// Ordered by frequency: [0] is omega1 (highest, extraordinary), [2] is the visible signal omega3.
using ModeTriple = std::array<ModeSpec, 3>;

struct PhaseMatchSolution {
  Process process = Process::spdc;
  ModeSpec pump;
  ModeSpec vacuum_mode;
  ModeSpec signal;
  double delta_longitudinal = 0.0;  ///< rad/um
  double residual = 0.0;            ///< normalized magnitude mismatch at the root
  std::optional<double> external_signal_angle;

  bool trapped() const { return !external_signal_angle.has_value(); }
  ModeTriple triple() const;
};

/// Scan grid for the signal polar angle: (0, 89] degrees in 0.1 degree brackets.
BracketScan default_theta_scan();

/// Wavelength of the vacuum-seeded partner mode.
double vacuum_wavelength(Process process, double pump_um, double signal_um);

/// Folds an azimuth onto [0, pi]; the crystal is mirror symmetric about the optic-axis meridian.
double canonical_azimuth(double phi);

/// Degrees to radians in [0, 2pi). Values d and 360-d fold to bit-identical canonical azimuths.
double azimuth_from_degrees(double degrees);

double optic_axis_angle(const CrystalSetup& setup, Direction d);
double refractive_index(const CrystalSetup& setup, const ModeSpec& mode);
Vec3 wavevector(const CrystalSetup& setup, const ModeSpec& mode);

/// Normalized magnitude residual of the vector matching condition for a signal
/// travelling along signal_dir. Zero at phase matching.
double matching_residual(const CrystalSetup& setup, Process process, double pump_um,
                         double signal_um, Direction signal_dir);

std::vector<PhaseMatchSolution> solve_spdc_cone(const CrystalSetup& setup, double pump_um,
                                                double signal_um, double phi,
                                                const BracketScan& scan = default_theta_scan());

std::vector<PhaseMatchSolution> solve_spuc_arc(const CrystalSetup& setup, double pump_ir_um,
                                               double signal_um, double phi,
                                               const BracketScan& scan = default_theta_scan());

std::vector<PhaseMatchSolution> solve_phase_match(const CrystalSetup& setup, Process process,
                                                  double pump_um, double signal_um, double phi,
                                                  const BracketScan& scan = default_theta_scan());

/// Exit through the face normal to z. Empty on total internal reflection.
std::optional<Direction> refract_exit(Direction internal, double n_internal);

/// k1z - k2z - k3z with kz = (2 pi n / lambda) cos(theta).
double longitudinal_mismatch(const CrystalSetup& setup, const ModeTriple& triple);

/// Normally incident pump, signal along signal_dir, and the vacuum mode whose
/// transverse wave vector closes the triangle exactly. Throws DomainError when the
/// vacuum mode would be evanescent.
ModeTriple transverse_closure(const CrystalSetup& setup, Process process, double pump_um,
                              double signal_um, Direction signal_dir);

}  // namespace paraconv
