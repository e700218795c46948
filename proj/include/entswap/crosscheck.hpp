// Self-consistency suites behind `entswap validate`: closed forms against the
// density-matrix oracle, and the normalization identities against each other.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace entswap {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  double max_deviation = 0.0;
  bool passed = false;  // max_deviation <= tolerance
};

struct CrosscheckReport {
  std::vector<SuiteResult> suites;
  bool passed = false;
};

// Each suite draws `samples` seeded cases. Normalization deviations are
// relative to max(1, |value|) since the sums grow like 4^n.
CrosscheckReport run_crosschecks(std::size_t samples, std::uint64_t seed, double tolerance);

}  // namespace entswap
