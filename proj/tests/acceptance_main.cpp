#include <cstdlib>
#include <iostream>
#include <string>

#include "lagns/acceptance.hpp"

// One PASS/FAIL line per criterion; exit status 1 if any criterion fails.
int main(int argc, char** argv) {
  lagns::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--serial") {
      options.parallel = false;
    } else {
      options.only.push_back(std::atoi(arg.c_str()));
    }
  }
  const auto results = lagns::run_acceptance(options);
  lagns::print_acceptance(std::cout, results);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << " (" << results.size() - failed << "/" << results.size()
            << ")\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
