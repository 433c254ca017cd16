#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paraconv/phasematch.hpp"

namespace paraconv {

/// Zeropoint field: every mode carries half a photon, seed = zeta * hbar * omega / 2.
struct ZpfSpectrum {
  double zeta = 1.0;
  double seed_intensity(double lambda_um) const;
};

/// beta_r = kappa * d_eff * omega_r / (n_r c), with d_eff in um/V and omega/c = 2 pi / lambda.
struct CouplingModel {
  double kappa = 1.0;
  double beta(double d_eff_pm_per_v, double lambda_um, double n) const;
};

/// Mode-sum quadrature. The window is [-half_width/l, half_width/l] in the
/// longitudinal mismatch; the Jacobian to the signal polar angle is a central difference.
struct ModeSumOptions {
  double window_half_width = 100.0;
  std::size_t points = 2001;
  double jacobian_step = 1e-6;
};

struct RadiometryParams {
  double pump_intensity = 1.0;
  ZpfSpectrum zpf;
  CouplingModel coupling;
  ModeSumOptions quadrature;
};

enum class PointFlag { matched, dark, trapped };

std::string_view to_string(PointFlag f);
std::optional<PointFlag> parse_flag(std::string_view s);

/// Mode-pair ingredients at one matched branch; exposed for tests and reporting.
struct BranchGain {
  double beta_vacuum = 0.0;
  double beta_signal = 0.0;
  double seed_vacuum = 0.0;
  double seed_signal = 0.0;
  double mismatch_slope = 0.0;  ///< d(delta)/d(theta_signal), rad/um per rad
  double jacobian = 0.0;        ///< 1/|mismatch_slope|
};

BranchGain branch_gain(const CrystalSetup& setup, const PhaseMatchSolution& solution,
                       const RadiometryParams& params);

/// Above-zeropoint signal excess summed over the mode pairs around one matched branch.
double branch_cross_section(const CrystalSetup& setup, const PhaseMatchSolution& solution,
                            const RadiometryParams& params);

struct CrossSection {
  double value = 0.0;
  PointFlag flag = PointFlag::dark;
  std::vector<PhaseMatchSolution> solutions;
};

/// Sum over every exiting branch at (signal wavelength, azimuth). Dark when no
/// branch phase matches, trapped when every branch is totally internally reflected.
CrossSection mode_sum_cross_section(const CrystalSetup& setup, Process process, double pump_um,
                                    double signal_um, double phi, const RadiometryParams& params);

struct RainbowRow {
  Process process = Process::spdc;
  double lambda_um = 0.0;
  double phi = 0.0;      ///< rad, [0, 2pi)
  double phi_deg = 0.0;  ///< grid value as requested
  std::optional<double> theta_int;
  std::optional<double> theta_ext;
  double cross_section = 0.0;
  PointFlag flag = PointFlag::dark;

  bool operator==(const RainbowRow&) const = default;
};

struct RainbowTable {
  std::vector<RainbowRow> rows;
  bool operator==(const RainbowTable&) const = default;
};

/// Every (lambda, phi) grid point becomes one row per branch, or one dark row.
/// Domain errors at a point are recorded as dark rows. Row order does not depend
/// on `threads` (0 = hardware concurrency).
RainbowTable scan_rainbow(const CrystalSetup& setup, Process process, double pump_um,
                          std::span<const double> lambda_grid_um, std::span<const double> phi_grid_deg,
                          const RadiometryParams& params, unsigned threads = 0);

struct WavelengthSummary {
  Process process = Process::spdc;
  double lambda_um = 0.0;
  std::size_t azimuths = 0;
  std::size_t covered = 0;
  double coverage = 0.0;
  std::optional<double> min_theta_ext;
  std::optional<double> max_theta_ext;
  std::optional<double> peak_phi_deg;
  double peak_cross_section = 0.0;
};

std::vector<WavelengthSummary> summarize(const RainbowTable& table);

class UndefinedRatio : public DomainError {
public:
  using DomainError::DomainError;
};

struct RatioPumps {
  double spdc_pump_um = 0.442;
  double spuc_pump_um = 0.845;
};

/// SPUC over SPDC cross section at equal pump intensities. Throws UndefinedRatio
/// when either side is dark.
double spuc_spdc_ratio(const CrystalSetup& setup, double signal_um, double phi,
                       const RadiometryParams& params, const RatioPumps& pumps = {});

}  // namespace paraconv
