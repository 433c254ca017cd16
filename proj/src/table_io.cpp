#include "paraconv/table_io.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace paraconv {
namespace {

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

std::string optional_degrees(const std::optional<double>& rad) {
  return rad ? format_double(*rad * rad_to_deg) : std::string{};
}

nlohmann::json optional_json(const std::optional<double>& v, double scale = 1.0) {
  return v ? nlohmann::json(*v * scale) : nlohmann::json(nullptr);
}

std::optional<double> optional_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_csv(std::ostream& out, const RainbowTable& table) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << fmt::format("{},{},{},{},{},{},{}\n", to_string(r.process), format_double(r.lambda_um),
                       format_double(r.phi_deg), optional_degrees(r.theta_int),
                       optional_degrees(r.theta_ext), format_double(r.cross_section), to_string(r.flag));
  }
}

void write_json(std::ostream& out, const RainbowTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({
        {"process", to_string(r.process)},
        {"lambda_um", r.lambda_um},
        {"phi_deg", r.phi_deg},
        {"phi_rad", r.phi},
        {"theta_int_rad", optional_json(r.theta_int)},
        {"theta_ext_rad", optional_json(r.theta_ext)},
        {"theta_int_deg", optional_json(r.theta_int, rad_to_deg)},
        {"theta_ext_deg", optional_json(r.theta_ext, rad_to_deg)},
        {"cross_section", r.cross_section},
        {"flag", to_string(r.flag)},
    });
  }
  const nlohmann::json doc{{"schema", "paraconv.rainbow/1"}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

RainbowTable read_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  if (doc.value("schema", "") != "paraconv.rainbow/1") {
    throw std::runtime_error("not a paraconv rainbow table");
  }
  RainbowTable table;
  for (const auto& j : doc.at("rows")) {
    RainbowRow r;
    const auto process = parse_process(j.at("process").get<std::string>());
    const auto flag = parse_flag(j.at("flag").get<std::string>());
    if (!process || !flag) throw std::runtime_error("rainbow row has an unknown process or flag");
    r.process = *process;
    r.flag = *flag;
    r.lambda_um = j.at("lambda_um").get<double>();
    r.phi_deg = j.at("phi_deg").get<double>();
    r.phi = j.at("phi_rad").get<double>();
    r.theta_int = optional_from(j.at("theta_int_rad"));
    r.theta_ext = optional_from(j.at("theta_ext_rad"));
    r.cross_section = j.at("cross_section").get<double>();
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace paraconv
