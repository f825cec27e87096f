#ifndef TRAVLAB_SELFTEST_HPP
#define TRAVLAB_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace travlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// "criterion <id> [<name>] PASS|FAIL (<seconds>s) <detail>"
std::string format_line(const CriterionResult& r);

/// Run the ten-part semantic self-check suite. Results come back in order;
/// with a progress stream, each line is printed as its criterion finishes.
std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress = nullptr);

} // namespace travlab

#endif
