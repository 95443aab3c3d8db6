// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstring>
#include <string>

#include "fisph/verify.hpp"

using namespace fisph;

int main(int argc, char** argv) {
  VerifyConfig cfg;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--deep") == 0) cfg.profile = "deep";
  bool all = true;
  for (const std::string& name : suite_names()) {
    const SuiteResult s = run_suite(name, cfg);
    all = all && s.pass;
    std::printf("criterion %2d %-20s %s  value=%.3e  runtime=%.1fs", s.criterion, s.name.c_str(),
                s.pass ? "PASS" : "FAIL", s.value, s.runtime_s);
    if (s.time_limit_s > 0.0) std::printf(" (limit %.0fs)", s.time_limit_s);
    std::printf("\n");
    for (const CheckResult& c : s.checks)
      std::printf("    %-4s %-52s %.3e <= %.1e%s%s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.threshold,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    for (const std::string& n : s.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
  return all ? 0 : 1;
}
