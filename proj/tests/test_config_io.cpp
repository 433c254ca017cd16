#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "paraconv/config.hpp"
#include "paraconv/table_io.hpp"

using namespace paraconv;

namespace {

std::string error_key(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_config(in);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

RainbowTable sample_table() {
  RainbowTable t;
  RainbowRow a;
  a.process = Process::spuc;
  a.lambda_um = 0.6;
  a.phi_deg = 181;
  a.phi = azimuth_from_degrees(181);
  a.theta_int = 0.465925223661516;
  a.theta_ext = 0.84839;
  a.cross_section = 1.234567890123456789e-27;
  a.flag = PointFlag::matched;
  RainbowRow b = a;
  b.theta_ext.reset();
  b.cross_section = 0.0;
  b.flag = PointFlag::trapped;
  RainbowRow c;
  c.lambda_um = 0.1 + 0.2;
  c.phi_deg = 7;
  c.phi = azimuth_from_degrees(7);
  t.rows = {a, b, c};
  return t;
}

}  // namespace

TEST_CASE("default configuration") {
  const Config c = default_config();
  CHECK(c.crystal.cut_angle == doctest::Approx(37 * std::numbers::pi / 180));
  CHECK(c.crystal.length_um == 1000.0);
  CHECK(c.crystal.model.ordinary.b0 == 2.7405);
  CHECK(c.crystal.model.extraordinary.b3 == 0.0044);
  CHECK(c.run.process == Process::spdc);
  CHECK(c.run.pump_um == 0.351);
  CHECK(c.run.lambda_grid.values().size() == 3);
  CHECK(c.run.phi_grid.values().size() == 360);
  CHECK(c.quadrature.points == 2001);
}

TEST_CASE("errors name the offending key") {
  const std::string base = default_config_text();
  CHECK(error_key(base).empty());
  CHECK(error_key(replace(base, "ordinary_b1 = 0.0184", "ordinary_b1 = abc")) == "crystal.ordinary_b1");
  CHECK(error_key(replace(base, "cut_angle_deg = 37\n", "")) == "crystal.cut_angle_deg");
  CHECK(error_key(replace(base, "[run]\n", "[run]\ncolour = red\n")) == "run.colour");
  CHECK(error_key(replace(base, "process = spdc", "process = shg")) == "run.process");
  CHECK(error_key(replace(base, "phi_range = 0:359:1", "phi_range = 0:359:0")) == "run.phi_range");
  CHECK(error_key(replace(base, "points = 2001", "points = 2000")) == "quadrature.points");
  CHECK(error_key(replace(base, "format = csv", "format = xml")) == "run.format");
  CHECK(error_key(replace(base, "pump_intensity = 1.0", "pump_intensity = -1")) == "run.pump_intensity");
  CHECK(error_key(base + "[extra]\nx = 1\n") == "extra");
  // A pole inside the window fails crystal validation.
  CHECK(error_key(replace(base, "lambda_min_um = 0.22", "lambda_min_um = 0.1")) == "crystal");
  CHECK_THROWS_AS(load_config("/nonexistent/paraconv.ini"), ConfigError);
}

TEST_CASE("grid specs") {
  const auto g = GridSpec::parse("0.6:0.8:0.1", "k");
  const auto v = g.values();
  REQUIRE(v.size() == 3);
  CHECK(v[2] == doctest::Approx(0.8));
  CHECK(GridSpec::parse("0.65", "k").values() == std::vector<double>{0.65});
  CHECK(GridSpec::parse("0:359:1", "k").values().size() == 360);
  CHECK_THROWS_AS(GridSpec::parse("0.8:0.6:0.1", "k"), ConfigError);
  CHECK_THROWS_AS(GridSpec::parse("1:2", "k"), ConfigError);
  CHECK_THROWS_AS(GridSpec::parse("a:b:c", "k"), ConfigError);
}

TEST_CASE("numbers keep full precision") {
  for (double v : {0.1 + 0.2, 1.0 / 3.0, 1.234567890123456789e-27, 8.39057481128736, 0.0, -2.5e300}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.6) == "0.59999999999999998");
}

TEST_CASE("CSV layout") {
  std::ostringstream out;
  write_csv(out, sample_table());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  std::getline(in, line);
  CHECK(line.rfind("spuc,0.59999999999999998,181,26.6955", 0) == 0);
  CHECK(line.find(",matched") == line.size() - 8);
  std::getline(in, line);
  CHECK(line.find(",,0,trapped") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "spdc,0.30000000000000004,7,,,0,dark");
}

TEST_CASE("JSON round trip reproduces the table") {
  const auto t = sample_table();
  std::stringstream buf;
  write_json(buf, t);
  const auto back = read_json(buf);
  CHECK(back == t);
  std::ostringstream a, b;
  write_csv(a, t);
  write_csv(b, back);
  CHECK(a.str() == b.str());

  std::istringstream bad(R"({"schema":"something else","rows":[]})");
  CHECK_THROWS(read_json(bad));
}
