#include "nullfoliate/report.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace nf {

using ojson = nlohmann::ordered_json;

std::string report_json(const Report& r, bool with_time) {
  ojson j;
  j["schema"] = kReportSchema;
  j["suite"] = r.suite;
  ojson c;
  c["m"] = r.config.m;
  c["backend"] = backend_name(r.config.backend);
  c["tolerance"] = r.config.tolerance;
  c["seed"] = r.config.seed;
  c["cases"] = r.config.cases;
  c["suite"] = r.config.suite;
  j["config"] = c;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["failures"] = ojson::array();
  for (const auto& f : r.failures) {
    ojson e;
    e["case_id"] = f.case_id;
    e["inputs"] = f.inputs;
    e["expected"] = f.expected;
    e["got"] = f.got;
    j["failures"].push_back(e);
  }
  if (with_time) j["wall_time_ms"] = r.wall_time_ms;
  return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  const ojson j = ojson::parse(text);
  if (j.at("schema") != kReportSchema) throw std::invalid_argument("unsupported report schema");
  Report r;
  r.suite = j.at("suite").get<std::string>();
  const ojson& c = j.at("config");
  r.config.m = c.at("m").get<int>();
  r.config.backend = parse_backend(c.at("backend").get<std::string>());
  r.config.tolerance = c.at("tolerance").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.cases = c.at("cases").get<long>();
  r.config.suite = c.at("suite").get<std::string>();
  r.passed = j.at("passed").get<long>();
  r.failed = j.at("failed").get<long>();
  for (const auto& e : j.at("failures")) {
    Failure f;
    f.case_id = e.at("case_id").get<long>();
    f.inputs = e.at("inputs").get<std::vector<std::string>>();
    f.expected = e.at("expected").get<std::string>();
    f.got = e.at("got").get<std::string>();
    r.failures.push_back(std::move(f));
  }
  if (j.contains("wall_time_ms")) r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

void emit_report(const Report& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << report_json(r);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace nf
