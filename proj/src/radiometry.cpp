#include "paraconv/radiometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "paraconv/coupledmode.hpp"
#include "paraconv/kernels.hpp"

namespace paraconv {
namespace {

constexpr double hbar = 1.054571817e-34;            // J s
constexpr double speed_of_light_um = 2.99792458e14;  // um/s
constexpr double rad_to_deg = 180.0 / std::numbers::pi;

double closure_mismatch(const CrystalSetup& setup, const PhaseMatchSolution& s, double theta, double phi) {
  return longitudinal_mismatch(
      setup, transverse_closure(setup, s.process, s.pump.lambda_um, s.signal.lambda_um, {theta, phi}));
}

}  // namespace

double ZpfSpectrum::seed_intensity(double lambda_um) const {
  const double omega = 2.0 * std::numbers::pi * speed_of_light_um / lambda_um;
  return zeta * hbar * omega / 2.0;
}

double CouplingModel::beta(double d_eff_pm_per_v, double lambda_um, double n) const {
  return kappa * (d_eff_pm_per_v * 1e-6) * (2.0 * std::numbers::pi / lambda_um) / n;
}

std::string_view to_string(PointFlag f) {
  switch (f) {
    case PointFlag::matched: return "matched";
    case PointFlag::trapped: return "trapped";
    case PointFlag::dark: break;
  }
  return "dark";
}

std::optional<PointFlag> parse_flag(std::string_view s) {
  if (s == "matched") return PointFlag::matched;
  if (s == "dark") return PointFlag::dark;
  if (s == "trapped") return PointFlag::trapped;
  return std::nullopt;
}

BranchGain branch_gain(const CrystalSetup& setup, const PhaseMatchSolution& solution,
                       const RadiometryParams& params) {
  const double theta = solution.signal.direction.theta;
  const double phi = canonical_azimuth(solution.signal.direction.phi);
  const double h = params.quadrature.jacobian_step;

  BranchGain g;
  g.mismatch_slope =
      (closure_mismatch(setup, solution, theta + h, phi) - closure_mismatch(setup, solution, theta - h, phi)) /
      (2.0 * h);
  g.jacobian = 1.0 / std::abs(g.mismatch_slope);

  const double n_vacuum = refractive_index(setup, solution.vacuum_mode);
  const double n_signal = refractive_index(setup, solution.signal);
  g.beta_vacuum = params.coupling.beta(setup.d_eff_pm_per_v, solution.vacuum_mode.lambda_um, n_vacuum);
  g.beta_signal = params.coupling.beta(setup.d_eff_pm_per_v, solution.signal.lambda_um, n_signal);
  g.seed_vacuum = params.zpf.seed_intensity(solution.vacuum_mode.lambda_um);
  g.seed_signal = params.zpf.seed_intensity(solution.signal.lambda_um);
  return g;
}

double branch_cross_section(const CrystalSetup& setup, const PhaseMatchSolution& solution,
                            const RadiometryParams& params) {
  const BranchGain g = branch_gain(setup, solution, params);
  if (!std::isfinite(g.jacobian)) {
    throw DomainError("mode-sum Jacobian is singular at this branch");
  }
  const double l = setup.length_um;
  // The vacuum mode sits in slot 1 of the two-mode gain, the signal in slot 3.
  // Only the sinc^2 factor depends on the mismatch, so the prefactor comes out of the integral.
  const ModePairState centre{
      .a1 = std::sqrt(g.seed_vacuum),
      .a3 = std::sqrt(g.seed_signal),
      .pump_intensity = params.pump_intensity,
      .mismatch = 0.0,
      .length_um = l,
  };
  const CouplingConstants c{g.beta_vacuum, g.beta_signal};
  const GainResult at_centre = linearized_gain(centre, c);
  const double s = sinc(0.5 * at_centre.effective_mismatch * l);
  const double prefactor = at_centre.delta_i3 / (s * s);

  const kernels::SincQuadrature q{
      .half_width = params.quadrature.window_half_width / l,
      .points = params.quadrature.points,
      .coupling = g.beta_vacuum * params.pump_intensity * g.beta_signal,
      .length_um = l,
  };
  return prefactor * g.jacobian * kernels::sinc2_simpson(q);
}

CrossSection mode_sum_cross_section(const CrystalSetup& setup, Process process, double pump_um,
                                    double signal_um, double phi, const RadiometryParams& params) {
  CrossSection out;
  out.solutions = solve_phase_match(setup, process, pump_um, signal_um, phi);
  if (out.solutions.empty()) return out;
  out.flag = PointFlag::trapped;
  for (const auto& s : out.solutions) {
    if (s.trapped()) continue;
    out.flag = PointFlag::matched;
    out.value += branch_cross_section(setup, s, params);
  }
  return out;
}

RainbowTable scan_rainbow(const CrystalSetup& setup, Process process, double pump_um,
                          std::span<const double> lambda_grid_um, std::span<const double> phi_grid_deg,
                          const RadiometryParams& params, unsigned threads) {
  const std::size_t nphi = phi_grid_deg.size();
  const std::size_t total = lambda_grid_um.size() * nphi;
  std::vector<std::vector<RainbowRow>> cells(total);

  auto evaluate = [&](std::size_t idx) {
    const double lambda = lambda_grid_um[idx / nphi];
    const double phi_deg = phi_grid_deg[idx % nphi];
    const double phi = azimuth_from_degrees(phi_deg);
    RainbowRow base;
    base.process = process;
    base.lambda_um = lambda;
    base.phi = phi;
    base.phi_deg = phi_deg;
    auto& rows = cells[idx];
    try {
      const auto solutions = solve_phase_match(setup, process, pump_um, lambda, phi);
      for (const auto& s : solutions) {
        RainbowRow r = base;
        r.theta_int = s.signal.direction.theta;
        r.theta_ext = s.external_signal_angle;
        r.flag = s.trapped() ? PointFlag::trapped : PointFlag::matched;
        if (!s.trapped()) r.cross_section = branch_cross_section(setup, s, params);
        rows.push_back(r);
      }
    } catch (const DomainError&) {
      rows.clear();
    }
    if (rows.empty()) rows.push_back(base);
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) evaluate(i);
      });
    }
  }

  RainbowTable table;
  table.rows.reserve(total);
  for (auto& c : cells) table.rows.insert(table.rows.end(), c.begin(), c.end());
  std::stable_sort(table.rows.begin(), table.rows.end(), [](const RainbowRow& a, const RainbowRow& b) {
    const double ta = a.theta_int.value_or(-1.0);
    const double tb = b.theta_int.value_or(-1.0);
    return std::tie(a.process, a.lambda_um, a.phi_deg, ta) < std::tie(b.process, b.lambda_um, b.phi_deg, tb);
  });
  return table;
}

std::vector<WavelengthSummary> summarize(const RainbowTable& table) {
  struct Acc {
    WavelengthSummary s;
    std::map<double, std::pair<bool, double>> per_phi;  // covered, summed cross section
  };
  std::map<std::pair<Process, double>, Acc> groups;
  for (const auto& r : table.rows) {
    auto& acc = groups[{r.process, r.lambda_um}];
    acc.s.process = r.process;
    acc.s.lambda_um = r.lambda_um;
    auto& cell = acc.per_phi[r.phi_deg];
    if (r.flag != PointFlag::dark) cell.first = true;
    cell.second += r.cross_section;
    if (r.flag == PointFlag::matched && r.theta_ext) {
      const double t = *r.theta_ext * rad_to_deg;
      acc.s.min_theta_ext = std::min(acc.s.min_theta_ext.value_or(t), t);
      acc.s.max_theta_ext = std::max(acc.s.max_theta_ext.value_or(t), t);
    }
  }
  std::vector<WavelengthSummary> out;
  for (auto& [key, acc] : groups) {
    acc.s.azimuths = acc.per_phi.size();
    for (const auto& [phi_deg, cell] : acc.per_phi) {
      if (cell.first) ++acc.s.covered;
      if (cell.first && (!acc.s.peak_phi_deg || cell.second > acc.s.peak_cross_section)) {
        acc.s.peak_phi_deg = phi_deg;
        acc.s.peak_cross_section = cell.second;
      }
    }
    acc.s.coverage = acc.s.azimuths ? static_cast<double>(acc.s.covered) / acc.s.azimuths : 0.0;
    out.push_back(acc.s);
  }
  return out;
}

double spuc_spdc_ratio(const CrystalSetup& setup, double signal_um, double phi,
                       const RadiometryParams& params, const RatioPumps& pumps) {
  CrossSection up;
  CrossSection down;
  try {
    up = mode_sum_cross_section(setup, Process::spuc, pumps.spuc_pump_um, signal_um, phi, params);
    down = mode_sum_cross_section(setup, Process::spdc, pumps.spdc_pump_um, signal_um, phi, params);
  } catch (const DomainError& e) {
    throw UndefinedRatio(fmt::format("ratio undefined at {} um: {}", signal_um, e.what()));
  }
  if (up.flag != PointFlag::matched || down.flag != PointFlag::matched) {
    throw UndefinedRatio(fmt::format("ratio undefined at {} um: {} side is dark", signal_um,
                                     up.flag != PointFlag::matched ? "SPUC" : "SPDC"));
  }
  return up.value / down.value;
}

}  // namespace paraconv
