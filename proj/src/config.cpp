#include "paraconv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace paraconv {
namespace {

namespace pt = boost::property_tree;

constexpr double deg = std::numbers::pi / 180.0;

double parse_number(std::string_view text, const std::string& key) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, fmt::format("expected a number, got '{}'", text));
  }
  return v;
}

class Section {
public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::string key(const std::string& k) const { return name_ + "." + k; }

  std::optional<std::string> text(const std::string& k) {
    seen_.insert(k);
    if (!tree_) return std::nullopt;
    if (auto v = tree_->get_optional<std::string>(pt::ptree::path_type(k, '\0'))) return *v;
    return std::nullopt;
  }
  double number(const std::string& k) {
    auto t = text(k);
    if (!t) throw ConfigError(key(k), "missing required key");
    return parse_number(*t, key(k));
  }
  double number(const std::string& k, double fallback) {
    auto t = text(k);
    return t ? parse_number(*t, key(k)) : fallback;
  }
  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [k, _] : *tree_) {
      if (!seen_.contains(k)) throw ConfigError(key(k), "unknown key");
    }
  }

private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> seen_;
};

CrystalSetup read_crystal(Section s) {
  CrystalSetup c;
  s.text("name");
  c.model.ordinary = {s.number("ordinary_b0"), s.number("ordinary_b1"), s.number("ordinary_b2"),
                      s.number("ordinary_b3")};
  c.model.extraordinary = {s.number("extraordinary_b0"), s.number("extraordinary_b1"),
                           s.number("extraordinary_b2"), s.number("extraordinary_b3")};
  c.model.window = {s.number("lambda_min_um"), s.number("lambda_max_um")};
  c.cut_angle = s.number("cut_angle_deg") * deg;
  c.length_um = s.number("length_mm") * 1000.0;
  c.d_eff_pm_per_v = s.number("d_eff_pm_per_v", 2.0);
  s.reject_unknown();
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError("crystal", e.what());
  }
  return c;
}

RunSettings read_run(Section s) {
  RunSettings r;
  if (auto p = s.text("process")) {
    auto v = parse_process(*p);
    if (!v) throw ConfigError(s.key("process"), fmt::format("expected spdc or spuc, got '{}'", *p));
    r.process = *v;
  }
  r.pump_um = s.number("pump_um", r.pump_um);
  r.pump_intensity = s.number("pump_intensity", r.pump_intensity);
  if (auto t = s.text("lambda_range")) r.lambda_grid = GridSpec::parse(*t, s.key("lambda_range"));
  if (auto t = s.text("phi_range")) r.phi_grid = GridSpec::parse(*t, s.key("phi_range"));
  if (auto f = s.text("format")) {
    if (*f == "csv") r.format = OutputFormat::csv;
    else if (*f == "json") r.format = OutputFormat::json;
    else throw ConfigError(s.key("format"), fmt::format("expected csv or json, got '{}'", *f));
  }
  if (auto o = s.text("out")) r.out = *o;
  r.ratio_pumps.spdc_pump_um = s.number("ratio_spdc_pump_um", r.ratio_pumps.spdc_pump_um);
  r.ratio_pumps.spuc_pump_um = s.number("ratio_spuc_pump_um", r.ratio_pumps.spuc_pump_um);
  const double threads = s.number("threads", 0.0);
  if (threads < 0.0 || threads != std::floor(threads)) {
    throw ConfigError(s.key("threads"), "expected a non-negative integer");
  }
  r.threads = static_cast<unsigned>(threads);
  if (!(r.pump_intensity > 0.0)) throw ConfigError(s.key("pump_intensity"), "must be positive");
  s.reject_unknown();
  return r;
}

ModeSumOptions read_quadrature(Section s) {
  ModeSumOptions q;
  q.window_half_width = s.number("window_half_width", q.window_half_width);
  const double points = s.number("points", static_cast<double>(q.points));
  if (points < 3 || points != std::floor(points) || std::fmod(points, 2.0) == 0.0) {
    throw ConfigError(s.key("points"), "expected an odd integer >= 3");
  }
  q.points = static_cast<std::size_t>(points);
  q.jacobian_step = s.number("jacobian_step_rad", q.jacobian_step);
  if (!(q.window_half_width > 0.0)) throw ConfigError(s.key("window_half_width"), "must be positive");
  if (!(q.jacobian_step > 0.0)) throw ConfigError(s.key("jacobian_step_rad"), "must be positive");
  s.reject_unknown();
  return q;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", key, message)), key_(std::move(key)) {}

std::vector<double> GridSpec::values() const {
  const auto n = static_cast<long long>(std::floor((max - min) / step + 1e-9));
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) v.push_back(min + static_cast<double>(i) * step);
  return v;
}

GridSpec GridSpec::parse(std::string_view text, const std::string& key) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  GridSpec g;
  if (a == std::string_view::npos) {
    // A single value is a one-point grid.
    g.min = g.max = parse_number(text, key);
    g.step = 1.0;
    return g;
  }
  if (b == std::string_view::npos) throw ConfigError(key, fmt::format("expected MIN:MAX:STEP, got '{}'", text));
  g.min = parse_number(text.substr(0, a), key);
  g.max = parse_number(text.substr(a + 1, b - a - 1), key);
  g.step = parse_number(text.substr(b + 1), key);
  if (!(g.step > 0.0)) throw ConfigError(key, "step must be positive");
  if (!(g.max >= g.min)) throw ConfigError(key, "MAX must not be below MIN");
  if ((g.max - g.min) / g.step > 1e6) throw ConfigError(key, "grid has more than a million points");
  return g;
}

RadiometryParams Config::radiometry() const {
  RadiometryParams p;
  p.pump_intensity = run.pump_intensity;
  p.quadrature = quadrature;
  return p;
}

Config parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", fmt::format("line {}: {}", e.line(), e.message()));
  }
  for (const auto& [name, _] : tree) {
    if (name != "crystal" && name != "run" && name != "quadrature") throw ConfigError(name, "unknown section");
  }
  auto section = [&](const char* name) -> const pt::ptree* {
    auto it = tree.find(name);
    return it == tree.not_found() ? nullptr : &it->second;
  };
  if (!section("crystal")) throw ConfigError("crystal", "missing required section");

  Config c;
  c.crystal = read_crystal(Section(section("crystal"), "crystal"));
  c.run = read_run(Section(section("run"), "run"));
  c.quadrature = read_quadrature(Section(section("quadrature"), "quadrature"));
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", fmt::format("cannot open '{}'", path.string()));
  return parse_config(in);
}

std::string default_config_text() {
  return R"([crystal]
name = BBO
ordinary_b0 = 2.7405
ordinary_b1 = 0.0184
ordinary_b2 = 0.0179
ordinary_b3 = 0.0155
extraordinary_b0 = 2.3730
extraordinary_b1 = 0.0128
extraordinary_b2 = 0.0156
extraordinary_b3 = 0.0044
lambda_min_um = 0.22
lambda_max_um = 2.6
cut_angle_deg = 37
length_mm = 1.0
d_eff_pm_per_v = 2.0

[run]
process = spdc
pump_um = 0.351
pump_intensity = 1.0
lambda_range = 0.6:0.8:0.1
phi_range = 0:359:1
format = csv
ratio_spdc_pump_um = 0.442
ratio_spuc_pump_um = 0.845

[quadrature]
window_half_width = 100
points = 2001
)";
}

Config default_config() {
  std::istringstream in(default_config_text());
  return parse_config(in);
}

}  // namespace paraconv
