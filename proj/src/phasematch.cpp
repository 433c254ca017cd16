#include "paraconv/phasematch.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace paraconv {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double deg = pi / 180.0;

double normalize_azimuth(double phi) {
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

double angle_between(const Vec3& a, const Vec3& b) {
  const Vec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  return std::atan2(c.norm(), a.dot(b));
}

void require_positive_wavelengths(double pump_um, double signal_um) {
  if (!(pump_um > 0.0) || !(signal_um > 0.0)) {
    throw DomainError(fmt::format("wavelengths must be positive (pump {} um, signal {} um)", pump_um,
                                  signal_um));
  }
}

double vacuum_mode_wavelength_checked(const CrystalSetup& setup, Process process, double pump_um,
                                      double signal_um) {
  require_positive_wavelengths(pump_um, signal_um);
  if (process == Process::spdc && !(signal_um > pump_um)) {
    throw DomainError(fmt::format("down conversion needs signal ({} um) longer than pump ({} um)",
                                  signal_um, pump_um));
  }
  const double lv = vacuum_wavelength(process, pump_um, signal_um);
  if (!setup.model.window.contains(lv)) {
    throw DomainError(fmt::format("{} wavelength {} um is outside the dispersion window [{}, {}] um",
                                  process == Process::spdc ? "idler" : "ultraviolet vacuum mode", lv,
                                  setup.model.window.min_um, setup.model.window.max_um));
  }
  return lv;
}

// Pump normal, extraordinary; signal and idler ordinary.
struct SpdcProblem {
  double k_pump;
  double k_signal;
  double k_idler;

  SpdcProblem(const CrystalSetup& setup, double pump_um, double signal_um, double idler_um)
      : k_pump(wavevector_magnitude(n_extraordinary(setup.model, pump_um, setup.cut_angle), pump_um)),
        k_signal(wavevector_magnitude(n_ordinary(setup.model, signal_um), signal_um)),
        k_idler(wavevector_magnitude(n_ordinary(setup.model, idler_um), idler_um)) {}

  Vec3 idler(Direction signal_dir) const {
    return Vec3{0.0, 0.0, k_pump} - k_signal * signal_dir.unit();
  }
  double residual(Direction signal_dir) const { return (idler(signal_dir).norm() - k_idler) / k_idler; }
};

// Pump normal, ordinary; the ultraviolet vacuum mode is extraordinary along k_pump + k_signal.
struct SpucProblem {
  const CrystalSetup& setup;
  double uv_um;
  double k_pump;
  double k_signal;

  SpucProblem(const CrystalSetup& s, double pump_um, double signal_um, double uv)
      : setup(s),
        uv_um(uv),
        k_pump(wavevector_magnitude(n_ordinary(s.model, pump_um), pump_um)),
        k_signal(wavevector_magnitude(n_ordinary(s.model, signal_um), signal_um)) {
    n_ordinary(s.model, uv_um);
  }

  Vec3 ultraviolet(Direction signal_dir) const {
    return Vec3{0.0, 0.0, k_pump} + k_signal * signal_dir.unit();
  }
  double target(const Vec3& k_uv) const {
    const double psi = angle_between(setup.optic_axis(), k_uv);
    return wavevector_magnitude(n_extraordinary(setup.model, uv_um, psi), uv_um);
  }
  double residual(Direction signal_dir) const {
    const Vec3 k1 = ultraviolet(signal_dir);
    const double t = target(k1);
    return (k1.norm() - t) / t;
  }
};

Direction mirror(Direction d, bool mirrored) {
  if (mirrored) d.phi = normalize_azimuth(two_pi - d.phi);
  return d;
}

PhaseMatchSolution finish(const CrystalSetup& setup, PhaseMatchSolution s) {
  s.delta_longitudinal = longitudinal_mismatch(setup, s.triple());
  if (auto out = refract_exit(s.signal.direction, refractive_index(setup, s.signal))) {
    s.external_signal_angle = out->theta;
  }
  return s;
}

}  // namespace

std::string_view to_string(Process p) { return p == Process::spdc ? "spdc" : "spuc"; }

std::optional<Process> parse_process(std::string_view s) {
  if (s == "spdc") return Process::spdc;
  if (s == "spuc") return Process::spuc;
  return std::nullopt;
}

void CrystalSetup::validate() const {
  model.validate();
  if (!(cut_angle > 0.0 && cut_angle < pi / 2.0)) {
    throw DomainError(fmt::format("cut angle {} rad must lie in (0, pi/2)", cut_angle));
  }
  if (!(length_um > 0.0)) throw DomainError(fmt::format("crystal length {} um must be positive", length_um));
  if (!(d_eff_pm_per_v > 0.0)) throw DomainError("effective nonlinear coefficient must be positive");
}

CrystalSetup bbo_setup() {
  return CrystalSetup{.model = bbo_dispersion(), .cut_angle = 37.0 * deg, .length_um = 1000.0, .d_eff_pm_per_v = 2.0};
}

ModeTriple PhaseMatchSolution::triple() const {
  if (process == Process::spdc) return {pump, vacuum_mode, signal};
  return {vacuum_mode, pump, signal};
}

BracketScan default_theta_scan() {
  return BracketScan{.lo = 0.0, .hi = 89.0 * deg, .step = 0.1 * deg, .residual_tolerance = 1e-10, .max_iterations = 200};
}

double vacuum_wavelength(Process process, double pump_um, double signal_um) {
  if (process == Process::spdc) return 1.0 / (1.0 / pump_um - 1.0 / signal_um);
  return 1.0 / (1.0 / pump_um + 1.0 / signal_um);
}

double canonical_azimuth(double phi) {
  const double r = normalize_azimuth(phi);
  return r > pi ? two_pi - r : r;
}

double azimuth_from_degrees(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r < 0.0) r += 360.0;
  if (r == 0.0) return 0.0;
  if (r <= 180.0) return two_pi - (360.0 - r) * deg;
  return r * deg;
}

double optic_axis_angle(const CrystalSetup& setup, Direction d) {
  return angle_between(setup.optic_axis(), d.unit());
}

double refractive_index(const CrystalSetup& setup, const ModeSpec& mode) {
  if (mode.polarization == Polarization::ordinary) return n_ordinary(setup.model, mode.lambda_um);
  return n_extraordinary(setup.model, mode.lambda_um, optic_axis_angle(setup, mode.direction));
}

Vec3 wavevector(const CrystalSetup& setup, const ModeSpec& mode) {
  return wavevector_magnitude(refractive_index(setup, mode), mode.lambda_um) * mode.direction.unit();
}

double matching_residual(const CrystalSetup& setup, Process process, double pump_um, double signal_um,
                         Direction signal_dir) {
  const double lv = vacuum_mode_wavelength_checked(setup, process, pump_um, signal_um);
  if (process == Process::spdc) return SpdcProblem(setup, pump_um, signal_um, lv).residual(signal_dir);
  return SpucProblem(setup, pump_um, signal_um, lv).residual(signal_dir);
}

std::vector<PhaseMatchSolution> solve_spdc_cone(const CrystalSetup& setup, double pump_um,
                                                double signal_um, double phi, const BracketScan& scan) {
  const double idler_um = vacuum_mode_wavelength_checked(setup, Process::spdc, pump_um, signal_um);
  const SpdcProblem problem(setup, pump_um, signal_um, idler_um);
  const double phi_n = normalize_azimuth(phi);
  const double phi_c = canonical_azimuth(phi);
  const bool mirrored = phi_n > pi;

  const auto roots = bracket_roots(
      [&](double theta) { return problem.residual({theta, phi_c}); }, scan);

  std::vector<PhaseMatchSolution> out;
  out.reserve(roots.size());
  for (const double theta : roots) {
    PhaseMatchSolution s;
    s.process = Process::spdc;
    s.pump = {pump_um, Polarization::extraordinary, {0.0, 0.0}};
    s.signal = {signal_um, Polarization::ordinary, {theta, phi_n}};
    s.vacuum_mode = {idler_um, Polarization::ordinary,
                     mirror(Direction::of(problem.idler({theta, phi_c})), mirrored)};
    s.residual = problem.residual({theta, phi_c});
    out.push_back(finish(setup, s));
  }
  return out;
}

std::vector<PhaseMatchSolution> solve_spuc_arc(const CrystalSetup& setup, double pump_ir_um,
                                               double signal_um, double phi, const BracketScan& scan) {
  const double uv_um = vacuum_mode_wavelength_checked(setup, Process::spuc, pump_ir_um, signal_um);
  const SpucProblem problem(setup, pump_ir_um, signal_um, uv_um);
  const double phi_n = normalize_azimuth(phi);
  const double phi_c = canonical_azimuth(phi);
  const bool mirrored = phi_n > pi;

  const auto roots = bracket_roots(
      [&](double theta) { return problem.residual({theta, phi_c}); }, scan);

  std::vector<PhaseMatchSolution> out;
  out.reserve(roots.size());
  for (const double theta : roots) {
    PhaseMatchSolution s;
    s.process = Process::spuc;
    s.pump = {pump_ir_um, Polarization::ordinary, {0.0, 0.0}};
    s.signal = {signal_um, Polarization::ordinary, {theta, phi_n}};
    s.vacuum_mode = {uv_um, Polarization::extraordinary,
                     mirror(Direction::of(problem.ultraviolet({theta, phi_c})), mirrored)};
    s.residual = problem.residual({theta, phi_c});
    out.push_back(finish(setup, s));
  }
  return out;
}

std::vector<PhaseMatchSolution> solve_phase_match(const CrystalSetup& setup, Process process,
                                                  double pump_um, double signal_um, double phi,
                                                  const BracketScan& scan) {
  if (process == Process::spdc) return solve_spdc_cone(setup, pump_um, signal_um, phi, scan);
  return solve_spuc_arc(setup, pump_um, signal_um, phi, scan);
}

std::optional<Direction> refract_exit(Direction internal, double n_internal) {
  const double s = n_internal * std::sin(internal.theta);
  if (s > 1.0) return std::nullopt;
  return Direction{std::asin(s), internal.phi};
}

double longitudinal_mismatch(const CrystalSetup& setup, const ModeTriple& triple) {
  double kz[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const ModeSpec& m = triple[i];
    kz[i] = wavevector_magnitude(refractive_index(setup, m), m.lambda_um) * std::cos(m.direction.theta);
  }
  return kz[0] - kz[1] - kz[2];
}

ModeTriple transverse_closure(const CrystalSetup& setup, Process process, double pump_um,
                              double signal_um, Direction signal_dir) {
  const double lv = vacuum_mode_wavelength_checked(setup, process, pump_um, signal_um);
  const ModeSpec signal{signal_um, Polarization::ordinary, signal_dir};
  const Vec3 k3 = wavevector(setup, signal);

  if (process == Process::spdc) {
    const ModeSpec pump{pump_um, Polarization::extraordinary, {0.0, 0.0}};
    const double kv = wavevector_magnitude(n_ordinary(setup.model, lv), lv);
    const double kt2 = k3.x * k3.x + k3.y * k3.y;
    if (!(kv * kv > kt2)) throw DomainError("idler mode would be evanescent");
    const Direction vdir = Direction::of({-k3.x, -k3.y, std::sqrt(kv * kv - kt2)});
    return {pump, ModeSpec{lv, Polarization::ordinary, vdir}, signal};
  }

  const ModeSpec pump{pump_um, Polarization::ordinary, {0.0, 0.0}};
  const Vec3 axis = setup.optic_axis();
  // |k| = k(psi(k)) along the line of fixed transverse component.
  auto g = [&](double kz) {
    const Vec3 k{k3.x, k3.y, kz};
    const double psi = angle_between(axis, k);
    return k.norm() - wavevector_magnitude(n_extraordinary(setup.model, lv, psi), lv);
  };
  const double kmax = wavevector_magnitude(n_ordinary(setup.model, lv), lv);
  const double g0 = g(0.0);
  if (!(g0 < 0.0)) throw DomainError("ultraviolet vacuum mode would be evanescent");
  const double kz = bisect(g, 0.0, kmax, g0, 200);
  const Direction vdir = Direction::of({k3.x, k3.y, kz});
  return {ModeSpec{lv, Polarization::extraordinary, vdir}, pump, signal};
}

}  // namespace paraconv
