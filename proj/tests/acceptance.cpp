// Acceptance runner: one PASS/FAIL line per criterion; exit 1 if any fails.
#include <cstdio>
#include <cstring>
#include <iostream>

#include "susygreen/verify.hpp"

int main(int argc, char** argv) {
  bool verbose = false;
  for (int i = 1; i < argc; ++i) verbose = verbose || std::strcmp(argv[i], "-v") == 0;
  susy::VerifyOptions opts;
  int failed = 0;
  opts.on_result = [&](const susy::CriterionResult& r) {
    std::cout << susy::format_line(r);
    if (verbose) {
      for (const auto& ch : r.checks) {
        std::cout << "      " << (ch.informational ? "info" : ch.passed ? "pass" : "FAIL") << "  " << ch.name << ": "
                  << ch.detail << "\n";
      }
    }
    std::cout.flush();
    if (!r.passed) ++failed;
  };
  susy::run_acceptance(opts);
  std::printf("%d of %d criteria pass\n", susy::kCriterionCount - failed, susy::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
