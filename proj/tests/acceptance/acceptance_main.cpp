// Acceptance gate: runs every acceptance criterion and prints exactly one
// PASS/FAIL line per criterion. Exits non-zero if any criterion fails.
#include <cstdio>
#include <string>

#include "pact/acceptance.hpp"

#ifndef PACT_DATA_DIR
#define PACT_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  const std::string data_dir = argc > 1 ? argv[1] : PACT_DATA_DIR;
  const std::string out_dir = argc > 2 ? argv[2] : "acceptance_out";

  const auto results = pact::run_acceptance(data_dir, out_dir);
  for (const auto& r : results)
    std::printf("[%2d] %s  %-28s %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
  return pact::all_passed(results) ? 0 : 1;
}
