#pragma once

#include <string>
#include <vector>

namespace bergman {

// One verified quantity: measured against target within tolerance.
// provenance names the oracle or identity the target comes from.
struct CheckResult {
  std::string check_id;
  std::string provenance;
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// A bundle of checks exercising one headline result end to end.
struct Criterion {
  std::string id;
  std::string title;
  std::vector<CheckResult> checks;
  bool pass() const;
};

int criteria_count();
Criterion run_criterion(int index);  // 1-based
std::vector<Criterion> run_all_criteria();

}  // namespace bergman
