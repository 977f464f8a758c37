#pragma once

#include <string>
#include <vector>

namespace pact {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;  // measured vs expected values
};

// Runs the full acceptance battery against the bundled scenario/model files
// in data_dir, writing scenario traces under out_dir. Results come back
// ordered by criterion id.
std::vector<CriterionResult> run_acceptance(const std::string& data_dir,
                                            const std::string& out_dir);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace pact
