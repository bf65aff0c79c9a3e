// Runs the twelve acceptance checks and prints one line per check.
// Exit status 1 when any check fails.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "conelab/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  bool all = true;
  for (int c : only.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12} : only) {
    const auto r = conelab::run_criterion(c);
    std::printf("%s\n", conelab::format_result(r).c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all checks passed" : "acceptance: FAILED");
  return all ? 0 : 1;
}
