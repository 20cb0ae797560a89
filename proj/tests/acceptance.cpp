// Runs every acceptance criterion over the verification corpus and prints
// one line per criterion. Exit status is nonzero if any criterion fails.

#include "gcohom/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>

using namespace gcohom;

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const auto corpus = verify::corpus();
  bool all = true;
  for (const auto& c : verify::criteria()) {
    if (only && c.number != only) continue;
    std::size_t checks = 0, failures = 0;
    double seconds = 0;
    std::string first;
    for (const auto& s : c.suites) {
      const SuiteResult r = verify::run_suite(s, corpus);
      checks += r.reports.size();
      failures += r.failures();
      seconds += r.seconds;
      for (const auto& rep : r.reports)
        if (!rep.ok && first.empty()) first = rep.json();
    }
    const bool ok = failures == 0 && checks > 0;
    all = all && ok;
    std::printf("criterion %d: %s  %s (%zu checks, %zu failed, %.1fs)\n", c.number, ok ? "PASS" : "FAIL",
                c.title.c_str(), checks, failures, seconds);
    if (!first.empty()) std::printf("  first failure: %s\n", first.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
