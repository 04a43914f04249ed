#ifndef QFOCK_SELFTEST_HPP
#define QFOCK_SELFTEST_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qfock {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full acceptance suite. Every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance();

/// Prints one PASS/FAIL line per criterion; returns the number of failures.
int run_selftest(std::ostream& os);

}  // namespace qfock

#endif
