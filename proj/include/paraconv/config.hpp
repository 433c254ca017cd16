#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paraconv/phasematch.hpp"
#include "paraconv/radiometry.hpp"

namespace paraconv {

/// Configuration problem tied to one key ("crystal.ordinary_b1", "run.lambda_range", ...).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

/// MIN:MAX:STEP, inclusive of MAX when it falls on the grid.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
  static GridSpec parse(std::string_view text, const std::string& key);
};

enum class OutputFormat { csv, json };

struct RunSettings {
  Process process = Process::spdc;
  double pump_um = 0.351;
  double pump_intensity = 1.0;
  GridSpec lambda_grid{0.6, 0.8, 0.1};
  GridSpec phi_grid{0.0, 359.0, 1.0};
  OutputFormat format = OutputFormat::csv;
  std::string out;
  RatioPumps ratio_pumps;
  unsigned threads = 0;
};

struct Config {
  CrystalSetup crystal;
  RunSettings run;
  ModeSumOptions quadrature;

  RadiometryParams radiometry() const;
};

/// INI text with [crystal], optional [run] and [quadrature] sections.
/// Unknown or missing keys raise ConfigError naming the key.
Config parse_config(std::istream& in);
Config load_config(const std::filesystem::path& path);

/// BBO, 37 degree cut, 1 mm, 351 nm SPDC pump; ratio pumps 442 and 845 nm.
std::string default_config_text();
Config default_config();

}  // namespace paraconv
