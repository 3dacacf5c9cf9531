#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nullfoliate/report.hpp"
#include "nullfoliate/scalar.hpp"

using namespace nf;

namespace {

RunConfig small(const std::string& suite, int m = 1) {
  RunConfig c;
  c.m = m;
  c.suite = suite;
  c.cases = 8;
  c.seed = 42;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(small("purity")));
  CHECK_THROWS_AS(validate(small("nope")), ConfigError);
  RunConfig c = small("purity");
  c.m = 4;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("purity");
  c.tolerance = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("purity");
  c.cases = 0;
  CHECK_THROWS_AS(run_suite(c), ConfigError);
  CHECK_THROWS_AS(parse_backend("double"), ConfigError);
  CHECK(parse_backend("float") == Backend::floating);
}

TEST_CASE("purity suite at m=1 passes every case") {
  RunConfig c = small("purity");
  c.cases = 100;
  const Report r = run_suite(c);
  CHECK(r.passed == 100);
  CHECK(r.failed == 0);
  CHECK(r.failures.empty());
}

TEST_CASE("clifford suite counts generator pairs") {
  const Report r = run_suite(small("clifford", 3));
  CHECK(r.passed == 28 + 45);
  CHECK(r.failed == 0);
  RunConfig f = small("clifford", 2);
  f.backend = Backend::floating;
  CHECK(run_suite(f).passed == 15 + 28);
}

TEST_CASE("every suite runs clean on a small config") {
  for (const auto& s : suite_names()) {
    CAPTURE(s);
    const Report r = run_suite(small(s, 2));
    CHECK(r.failed == 0);
    CHECK(r.passed > 0);
  }
}

TEST_CASE("reports are deterministic and schedule independent") {
  const RunConfig c = small("all", 2);
  const std::string a = report_json(run_suite(c), false);
  CHECK(a == report_json(run_suite(c), false));
  CHECK(a == report_json(run_suite(c, false), false));
  RunConfig d = c;
  d.seed = 43;
  CHECK(report_json(run_suite(d), false).find("\"seed\": 43") != std::string::npos);
}

TEST_CASE("json layout: key order, empty failures, time") {
  const Report r = run_suite(small("purity"));
  const std::string j = report_json(r);
  const std::vector<std::string> keys{"\"schema\"", "\"suite\"", "\"config\"", "\"passed\"",
                                      "\"failed\"", "\"failures\"", "\"wall_time_ms\""};
  std::size_t pos = 0;
  for (const auto& k : keys) {
    const std::size_t at = j.find(k, pos);
    CHECK(at != std::string::npos);
    pos = at;
  }
  CHECK(j.find("\"failures\": []") != std::string::npos);
  CHECK(j.find("nullfoliate-report/1") != std::string::npos);
  CHECK(r.wall_time_ms >= 0);
  CHECK(report_json(r, false).find("wall_time_ms") == std::string::npos);
}

TEST_CASE("parse-back reproduces the report, including failures") {
  Report r;
  r.suite = "incidence";
  r.config = small("incidence", 3);
  r.config.backend = Backend::floating;
  r.config.tolerance = 1e-7;
  r.config.seed = 18446744073709551615ULL;
  r.passed = 5;
  r.failed = 2;
  r.failures.push_back({3, {Scalar::sqrt2().str(), Scalar::rational(-1, 3).str()}, "2", "1"});
  r.failures.push_back({7, {}, "no exception", "exception: x"});
  r.wall_time_ms = 12.5;
  const Report b = parse_report(report_json(r));
  CHECK(b.suite == r.suite);
  CHECK(b.config.m == 3);
  CHECK(b.config.backend == Backend::floating);
  CHECK(b.config.tolerance == 1e-7);
  CHECK(b.config.seed == r.config.seed);
  CHECK(b.config.cases == r.config.cases);
  CHECK(b.passed == 5);
  CHECK(b.failed == 2);
  CHECK(b.failures == r.failures);
  CHECK(b.wall_time_ms == 12.5);
  CHECK(Scalar::parse(b.failures[0].inputs[0]) == Scalar::sqrt2());
  CHECK(report_json(b) == report_json(r));
  CHECK_THROWS(parse_report("{\"schema\": \"other\"}"));
}

TEST_CASE("emit_report writes the file and reports I/O failure") {
  const Report r = run_suite(small("purity"));
  const std::string path = "report_test_out.json";
  emit_report(r, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == report_json(r));
  std::remove(path.c_str());
  CHECK_THROWS(emit_report(r, "/nonexistent-dir/x.json"));
}
