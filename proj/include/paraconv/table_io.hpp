#pragma once

#include <iosfwd>
#include <string>

#include "paraconv/radiometry.hpp"

namespace paraconv {

inline constexpr const char* kCsvHeader =
    "process,lambda_um,phi_deg,theta_int_deg,theta_ext_deg,cross_section,flag";

/// 17 significant digits; round-trips every finite double.
std::string format_double(double v);

/// Missing angles (dark rows, trapped exit angles) are empty fields.
void write_csv(std::ostream& out, const RainbowTable& table);

/// Radian fields carry the exact values; the degree fields are for people.
void write_json(std::ostream& out, const RainbowTable& table);
RainbowTable read_json(std::istream& in);

}  // namespace paraconv
