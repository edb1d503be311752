#ifndef SHARPCSP_TOOLS_SELFTEST_H_
#define SHARPCSP_TOOLS_SELFTEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace sharpcsp::tools {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::string first_failure;
};

// Randomized invariant checks; identical seeds give identical results.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, int trials);

}  // namespace sharpcsp::tools

#endif  // SHARPCSP_TOOLS_SELFTEST_H_
