#ifndef PQJC_CHECKS_HPP
#define PQJC_CHECKS_HPP

#include <string>
#include <vector>

#include "pqjc/config.hpp"

namespace pqjc {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool informational = false;  // reported but never counted as a failure
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Full invariant suite over the configured model: arithmetic recursions,
// exponential inversion identities, spectrum oracle, VCS contracts, moment
// and Ramanujan checks, dynamics bounds.
std::vector<CheckResult> run_verification_suite(const RunConfig& cfg);

inline bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.informational && !r.pass) return false;
  return true;
}

}  // namespace pqjc

#endif  // PQJC_CHECKS_HPP
