// Acceptance suite driver: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include "rydcat/acceptance.hpp"

int main(int argc, char** argv) {
  rydcat::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      opts.only = std::atoi(argv[++i]);
    } else if (arg == "--perturb-golden") {
      opts.perturb_golden = true;
    } else {
      std::cerr << "usage: acceptance [--criterion k] [--perturb-golden]\n";
      return 2;
    }
  }
  const auto results = rydcat::run_acceptance(opts);
  std::cout << rydcat::format_report(results);
  return rydcat::all_passed(results) ? 0 : 1;
}
