#include <cstdio>

#include "rotband/verify.hpp"

int main() {
  bool all = true;
  for (int n : rotband::suite_criteria("all")) {
    const auto results = rotband::run_acceptance({n}, "acceptance_out");
    const auto& r = results.front();
    std::printf("%s  criterion %2d: %s — %s (%.1fs)\n",
                r.passed ? "PASS" : "FAIL", r.number, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
