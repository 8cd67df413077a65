#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lagns {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured quantities against their thresholds
};

struct AcceptanceOptions {
  std::vector<int> only;  // criterion ids to run; empty runs all ten
  bool parallel = true;   // independent runs on separate threads
};

/// Runs the acceptance criteria and returns one result per criterion, ordered by id.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 uniform-bounds: ..." per result.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace lagns
