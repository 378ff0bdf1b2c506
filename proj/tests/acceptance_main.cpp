// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance_tests [seed] [jobs]

#include <cstdlib>
#include <iostream>
#include <string>

#include "toric_ic/acceptance.hpp"

int main(int argc, char** argv) {
  toric_ic::AcceptanceOptions options;
  if (argc > 1) options.seed = std::stoull(argv[1]);
  if (argc > 2) options.jobs = static_cast<unsigned>(std::stoul(argv[2]));
  int failed = 0;
  for (const auto& r : toric_ic::run_acceptance(options)) {
    std::cout << toric_ic::format_result(r) << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
