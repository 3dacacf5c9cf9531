#include <iostream>

#include "CLI11.hpp"
#include "nullfoliate/report.hpp"
#include "nullfoliate/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for null foliations and pure spinors"};
  nf::RunConfig cfg;
  std::string backend = "exact", out;
  bool serial = false;
  app.add_option("--m", cfg.m, "half dimension, 1..3")->capture_default_str();
  app.add_option("--backend", backend, "exact or float")->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "float tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  app.add_option("--cases", cfg.cases, "cases per suite")->capture_default_str();
  app.add_option("--suite", cfg.suite, "clifford|purity|incidence|tractor|charts|foliation|robinson|kerr|all")
      ->capture_default_str();
  app.add_option("--out", out, "write the JSON report here instead of stdout");
  app.add_flag("--serial", serial, "run cases on one thread");
  CLI11_PARSE(app, argc, argv);

  try {
    cfg.backend = nf::parse_backend(backend);
    const nf::Report r = nf::run_suite(cfg, !serial);
    if (out.empty())
      std::cout << nf::report_json(r);
    else
      nf::emit_report(r, out);
    std::cerr << r.suite << ": " << r.passed << " passed, " << r.failed << " failed\n";
    return r.failed == 0 ? 0 : 1;
  } catch (const nf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
