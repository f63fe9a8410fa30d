#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treesearch {

// Environment state is an explicit vector of doubles; simulators are pure
// functions of it. Copying the vector *is* the snapshot/restore mechanism.
using State = std::vector<double>;

enum class Metric { SupNorm, L2 };

struct EnvSpec {
  std::string name;          // stable identifier, used in CSV output
  int action_count = 2;      // discrete actions 0..action_count-1
  int horizon = 1;           // episode step limit
  double reward_bound = 1.0; // |r| <= reward_bound for every step
  int state_dim = 1;
  Metric metric = Metric::SupNorm;
};

struct StepResult {
  State next_state;
  double reward = 0.0;
  bool terminal = false;
};

double state_distance(const State& a, const State& b, Metric metric);

// Deterministic simulator interface. Instances are immutable and safe to
// share across threads; all episode-specific randomness enters through the
// reset seed.
class EnvModel {
 public:
  virtual ~EnvModel() = default;

  virtual const EnvSpec& spec() const = 0;

  // Initial state for an episode. Deterministic in the seed.
  virtual State reset(std::uint64_t episode_seed) const = 0;

  // Applies an action to a non-terminal state. Stepping a terminal state or
  // passing an out-of-range action is a caller bug and throws.
  virtual StepResult step(const State& state, int action) const = 0;

  // Distance under this environment's declared metric.
  double distance(const State& a, const State& b) const {
    return state_distance(a, b, spec().metric);
  }

 protected:
  void check_action(int action) const;
};

}  // namespace treesearch
