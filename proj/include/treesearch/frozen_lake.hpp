#pragma once

#include "treesearch/env.hpp"

namespace treesearch {

// Deterministic 4x4 FrozenLake on the canonical map. State is [row, col].
// Actions: 0 left, 1 down, 2 right, 3 up; moves off the grid keep the agent
// in place. Entering the goal pays +1 and terminates; holes terminate with 0.
class FrozenLakeDet : public EnvModel {
 public:
  explicit FrozenLakeDet(int horizon = 0);

  const EnvSpec& spec() const override { return spec_; }
  State reset(std::uint64_t episode_seed) const override;
  StepResult step(const State& state, int action) const override;

  static constexpr int kSize = 4;
  char cell(int row, int col) const;

 private:
  EnvSpec spec_;
};

}  // namespace treesearch
