#pragma once

#include <stdexcept>
#include <vector>

#include "treesearch/env.hpp"

namespace treesearch {

struct OracleResult {
  double optimal_value = 0.0;
  std::vector<int> optimal_actions;  // ascending; ties within 1e-12
  long expanded_traces = 0;          // complete root-to-end paths visited
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  explicit OracleBudgetExceeded(long budget)
      : std::runtime_error("oracle: node budget of " + std::to_string(budget) +
                           " exceeded; refusing to continue") {}
};

// Exhaustive depth-first enumeration of the horizon-truncated tree below
// `state`. No memoization: correctness does not depend on states being
// unique, so cyclic domains are handled (at exponential cost). Throws
// OracleBudgetExceeded once more than node_budget simulator steps were taken.
OracleResult oracle_solve(const EnvModel& env, const State& state, int horizon,
                          double gamma, long node_budget = 10'000'000);

}  // namespace treesearch
