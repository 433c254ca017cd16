// paraconv: phase-matching geometry and zeropoint-seeded cross sections for
// spontaneous parametric down and up conversion in a uniaxial crystal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "paraconv/config.hpp"
#include "paraconv/radiometry.hpp"
#include "paraconv/table_io.hpp"

namespace {

using namespace paraconv;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitIo = 4;

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

struct Overrides {
  std::string config;
  std::string process;
  double pump_um = 0.0;
  double signal_um = 0.6;
  double phi_deg = 0.0;
  double pump_intensity = 0.0;
  std::string lambda_range;
  std::string phi_range;
  std::string format;
  std::string out;
  unsigned threads = 0;

  CLI::Option* pump_opt = nullptr;
  CLI::Option* intensity_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "Crystal/run definition file (INI); built-in BBO 37 deg default");
  sub->add_option("--process", o.process, "spdc or spuc");
  o.pump_opt = sub->add_option("--pump-um", o.pump_um, "Pump wavelength in um");
  o.intensity_opt = sub->add_option("--pump-intensity", o.pump_intensity, "Pump intensity, arbitrary units");
  sub->add_option("--lambda-range", o.lambda_range, "Signal wavelength grid MIN:MAX:STEP in um");
  sub->add_option("--phi-range", o.phi_range, "Azimuth grid MIN:MAX:STEP in degrees");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--out", o.out, "Output path (stdout when omitted)");
  o.threads_opt = sub->add_option("--threads", o.threads, "Worker threads for scans (0 = all cores)");
}

Config resolve_config(const Overrides& o) {
  Config c = o.config.empty() ? default_config() : load_config(o.config);
  if (!o.process.empty()) {
    auto p = parse_process(o.process);
    if (!p) throw ConfigError("--process", fmt::format("expected spdc or spuc, got '{}'", o.process));
    // Switching process without naming a pump picks that process's usual pump.
    if (*p != c.run.process && !(o.pump_opt && o.pump_opt->count())) {
      c.run.pump_um = *p == Process::spuc ? c.run.ratio_pumps.spuc_pump_um : 0.351;
    }
    c.run.process = *p;
  }
  if (o.pump_opt && o.pump_opt->count()) c.run.pump_um = o.pump_um;
  if (o.intensity_opt && o.intensity_opt->count()) {
    if (!(o.pump_intensity > 0.0)) throw ConfigError("--pump-intensity", "must be positive");
    c.run.pump_intensity = o.pump_intensity;
  }
  if (!o.lambda_range.empty()) c.run.lambda_grid = GridSpec::parse(o.lambda_range, "--lambda-range");
  if (!o.phi_range.empty()) c.run.phi_grid = GridSpec::parse(o.phi_range, "--phi-range");
  if (!o.format.empty()) {
    if (o.format == "csv") c.run.format = OutputFormat::csv;
    else if (o.format == "json") c.run.format = OutputFormat::json;
    else throw ConfigError("--format", fmt::format("expected csv or json, got '{}'", o.format));
  }
  if (!o.out.empty()) c.run.out = o.out;
  if (o.threads_opt && o.threads_opt->count()) c.run.threads = o.threads;

  const auto& window = c.crystal.model.window;
  if (!window.contains(c.run.pump_um)) {
    throw ConfigError("run.pump_um", fmt::format("{} um is outside the dispersion window [{}, {}] um",
                                                 c.run.pump_um, window.min_um, window.max_um));
  }
  for (double l : c.run.lambda_grid.values()) {
    if (!window.contains(l)) {
      throw ConfigError("run.lambda_range", fmt::format("{} um is outside the dispersion window [{}, {}] um",
                                                        l, window.min_um, window.max_um));
    }
  }
  return c;
}

// Writes to the configured path, or stdout when none is set. False on I/O failure.
template <class Fn>
bool emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  write(f);
  f.close();
  return static_cast<bool>(f);
}

double azimuth_coverage(const CrystalSetup& setup, Process process, double pump, double signal) {
  int covered = 0;
  for (int d = 0; d < 360; ++d) {
    if (!solve_phase_match(setup, process, pump, signal, azimuth_from_degrees(d)).empty()) ++covered;
  }
  return covered / 360.0;
}

int cmd_match(const Config& c, double signal_um, double phi_deg) {
  const auto& run = c.run;
  const double phi = azimuth_from_degrees(phi_deg);
  const auto solutions = solve_phase_match(c.crystal, run.process, run.pump_um, signal_um, phi);
  const double lv = vacuum_wavelength(run.process, run.pump_um, signal_um);

  fmt::print("process {}  pump {} um ({})  signal {} um  phi {} deg\n", to_string(run.process), run.pump_um,
             run.process == Process::spdc ? "extraordinary" : "ordinary", signal_um, phi_deg);
  fmt::print("vacuum mode {:.6f} um ({})\n", lv, run.process == Process::spdc ? "ordinary" : "extraordinary");
  int k = 0;
  for (const auto& s : solutions) {
    ++k;
    fmt::print("solution {}\n", k);
    fmt::print("  signal theta internal {:.6f} deg\n", s.signal.direction.theta * rad_to_deg);
    if (s.external_signal_angle) {
      fmt::print("  signal theta external {:.6f} deg\n", *s.external_signal_angle * rad_to_deg);
    } else {
      fmt::print("  signal theta external trapped (total internal reflection)\n");
    }
    fmt::print("  vacuum mode theta {:.6f} deg  phi {:.6f} deg\n", s.vacuum_mode.direction.theta * rad_to_deg,
               s.vacuum_mode.direction.phi * rad_to_deg);
    fmt::print("  residual {:.3e}  longitudinal mismatch {:.3e} rad/um\n", s.residual, s.delta_longitudinal);
  }
  if (solutions.empty()) fmt::print("no phase-matched solution at this azimuth\n");
  fmt::print("azimuth coverage at {} um (1 deg sweep): {:.4f}\n", signal_um,
             azimuth_coverage(c.crystal, run.process, run.pump_um, signal_um));
  return solutions.empty() ? kExitNoSolution : kExitOk;
}

int cmd_rainbow(const Config& c) {
  const auto& run = c.run;
  const auto lambdas = run.lambda_grid.values();
  const auto phis = run.phi_grid.values();
  const RainbowTable table =
      scan_rainbow(c.crystal, run.process, run.pump_um, lambdas, phis, c.radiometry(), run.threads);

  const bool ok = emit(run.out, [&](std::ostream& os) {
    if (run.format == OutputFormat::json) write_json(os, table);
    else write_csv(os, table);
  });
  if (!ok) {
    fmt::print(stderr, "error: cannot write '{}'\n", run.out);
    return kExitIo;
  }

  std::FILE* report = run.out.empty() ? stderr : stdout;
  for (const auto& s : summarize(table)) {
    std::string angles = "no exiting solution";
    if (s.min_theta_ext) angles = fmt::format("theta_ext {:.4f}..{:.4f} deg", *s.min_theta_ext, *s.max_theta_ext);
    std::string peak = s.peak_phi_deg ? fmt::format("peak at phi {} deg", *s.peak_phi_deg) : "no peak";
    fmt::print(report, "{} {:.4f} um: {}, coverage {:.4f} ({}/{}), {}\n", to_string(s.process), s.lambda_um,
               angles, s.coverage, s.covered, s.azimuths, peak);
  }
  return kExitOk;
}

int cmd_ratio(const Config& c, double signal_um) {
  const auto& run = c.run;
  const auto params = c.radiometry();
  auto cell = [&](double lambda, double phi) {
    try {
      return fmt::format("{:.6g}", spuc_spdc_ratio(c.crystal, lambda, phi, params, run.ratio_pumps));
    } catch (const DomainError&) {
      return std::string("dark");
    }
  };

  std::ostringstream text;
  fmt::print(text, "# SPUC/SPDC cross-section ratio, pumps {} um (spuc) and {} um (spdc), equal intensity\n",
             run.ratio_pumps.spuc_pump_um, run.ratio_pumps.spdc_pump_um);
  fmt::print(text, "# versus signal wavelength at phi = 180 deg\nlambda_um,ratio\n");
  for (double l : run.lambda_grid.values()) fmt::print(text, "{},{}\n", format_double(l), cell(l, std::numbers::pi));
  fmt::print(text, "# versus azimuth at lambda = {} um\nphi_deg,ratio\n", signal_um);
  for (double d : run.phi_grid.values()) {
    fmt::print(text, "{},{}\n", format_double(d), cell(signal_um, azimuth_from_degrees(d)));
  }

  std::cout << text.str();
  if (!run.out.empty() && !emit(run.out, [&](std::ostream& os) { os << text.str(); })) {
    fmt::print(stderr, "error: cannot write '{}'\n", run.out);
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-wave mixing in a uniaxial crystal: spontaneous down and up conversion rainbows"};
  app.require_subcommand(1);

  Overrides o;
  auto* match = app.add_subcommand("match", "Solve the phase-matching relations at one signal wavelength and azimuth");
  add_common(match, o);
  match->add_option("--signal-um", o.signal_um, "Signal wavelength in um")->required();
  match->add_option("--phi-deg", o.phi_deg, "Signal azimuth in degrees (optic-axis meridian = 0)");

  auto* rainbow = app.add_subcommand("rainbow", "Scan wavelength x azimuth and write the rainbow table");
  add_common(rainbow, o);

  auto* ratio = app.add_subcommand("ratio", "Tabulate the SPUC/SPDC cross-section ratio");
  add_common(ratio, o);
  ratio->add_option("--signal-um", o.signal_um, "Signal wavelength for the azimuth table in um");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Overrides scoped = o;
    // Option handles belong to whichever subcommand ran.
    for (auto* sub : {match, rainbow, ratio}) {
      if (!sub->parsed()) continue;
      scoped.pump_opt = sub->get_option("--pump-um");
      scoped.intensity_opt = sub->get_option("--pump-intensity");
      scoped.threads_opt = sub->get_option("--threads");
    }
    const Config c = resolve_config(scoped);
    if (match->parsed()) return cmd_match(c, o.signal_um, o.phi_deg);
    if (rainbow->parsed()) return cmd_rainbow(c);
    return cmd_ratio(c, o.signal_um);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return kExitConfig;
  }
}
