#pragma once

#include <string>

#include "nullfoliate/suites.hpp"

namespace nf {

inline constexpr const char* kReportSchema = "nullfoliate-report/1";

// Fixed key order: schema, suite, config, passed, failed, failures, wall_time_ms.
std::string report_json(const Report& r, bool with_time = true);
Report parse_report(const std::string& text);
// Throws std::runtime_error when the file cannot be written.
void emit_report(const Report& r, const std::string& path);

}  // namespace nf
