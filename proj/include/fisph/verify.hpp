#pragma once
// Verification suites shared by the CLI and the acceptance binary.

#include <map>
#include <string>
#include <vector>

namespace fisph {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  double value = 0.0;  // worst metric
  double threshold = 0.0;
  double runtime_s = 0.0;
  double time_limit_s = 0.0;  // 0: none
  bool pass = false;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
};

struct VerifyConfig {
  std::string profile = "desk";  // desk | deep
  int threads = 1;
  std::map<std::string, double> thresholds;  // suite name -> threshold override
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
double default_threshold(const std::string& suite);

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);

}  // namespace fisph
