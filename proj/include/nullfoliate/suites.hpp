#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nf {

enum class Backend { exact, floating };

struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct RunConfig {
  int m = 2;
  Backend backend = Backend::exact;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  long cases = 50;
  std::string suite = "all";
};

struct Failure {
  long case_id = 0;
  std::vector<std::string> inputs;
  std::string expected, got;
  bool operator==(const Failure&) const = default;
};

struct Report {
  std::string suite;
  RunConfig config;
  long passed = 0, failed = 0;
  std::vector<Failure> failures;  // sorted by case_id
  double wall_time_ms = 0;
};

const std::vector<std::string>& suite_names();
std::string backend_name(Backend b);
Backend parse_backend(const std::string& s);

// Throws ConfigError on an unknown suite or out-of-range field.
void validate(const RunConfig& cfg);

// Cases run on OpenMP threads unless parallel is false; the report does not
// depend on the schedule. The clifford suite enumerates generator pairs and
// ignores cfg.cases.
Report run_suite(const RunConfig& cfg, bool parallel = true);

}  // namespace nf
