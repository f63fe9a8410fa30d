#include "treesearch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treesearch {

namespace {

struct Enumerator {
  const EnvModel& env;
  int horizon;
  double gamma;
  long node_budget;
  long steps_taken = 0;
  long traces = 0;

  // Best achievable discounted return from a non-terminal state at `depth`.
  double best_value(const State& state, int depth) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < env.spec().action_count; ++a)
      best = std::max(best, action_value(state, depth, a));
    return best;
  }

  double action_value(const State& state, int depth, int action) {
    if (++steps_taken > node_budget) throw OracleBudgetExceeded(node_budget);
    const StepResult sr = env.step(state, action);
    if (sr.terminal || depth + 1 == horizon) {
      ++traces;
      return sr.reward;
    }
    return sr.reward + gamma * best_value(sr.next_state, depth + 1);
  }
};

}  // namespace

OracleResult oracle_solve(const EnvModel& env, const State& state, int horizon,
                          double gamma, long node_budget) {
  if (horizon < 1)
    throw std::invalid_argument("oracle: horizon must be >= 1");

  Enumerator en{env, horizon, gamma, node_budget};
  std::vector<double> values(env.spec().action_count);
  for (int a = 0; a < env.spec().action_count; ++a)
    values[a] = en.action_value(state, 0, a);

  OracleResult out;
  out.expanded_traces = en.traces;
  out.optimal_value = *std::max_element(values.begin(), values.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(out.optimal_value));
  for (int a = 0; a < env.spec().action_count; ++a)
    if (out.optimal_value - values[a] <= tol) out.optimal_actions.push_back(a);
  return out;
}

}  // namespace treesearch
