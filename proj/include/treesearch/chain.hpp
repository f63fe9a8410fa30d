#pragma once

#include "treesearch/env.hpp"

namespace treesearch {

// Sparse-reward corridor of length N. State is the single index. From index
// k one action advances to k+1 and the other ends the episode with nothing;
// reaching index N pays goal_reward and terminates. Which physical action
// advances is a seeded pseudorandom bit per state, so a fixed "always pick
// action 0" policy cannot solve the domain by accident.
class Chain : public EnvModel {
 public:
  explicit Chain(int length, double goal_reward = 1.0,
                 std::uint64_t action_map_seed = 0, int horizon = 0);

  const EnvSpec& spec() const override { return spec_; }
  State reset(std::uint64_t episode_seed) const override;
  StepResult step(const State& state, int action) const override;

  // The advancing action at a given non-terminal index.
  int forward_action(int state_index) const;
  int length() const { return length_; }

 private:
  int index_of(const State& s) const;

  int length_;
  double goal_reward_;
  std::uint64_t action_map_seed_;
  EnvSpec spec_;
};

// Chain variant with cycles instead of dead ends: the losing action returns
// the agent to the start state (non-terminal, zero reward). States are
// indexed 1..N; advancing from N pays goal_reward and terminates.
class LoopyChain : public EnvModel {
 public:
  explicit LoopyChain(int length, double goal_reward = 1.0,
                      std::uint64_t action_map_seed = 0, int reset_target = 1,
                      int horizon = 0);

  const EnvSpec& spec() const override { return spec_; }
  State reset(std::uint64_t episode_seed) const override;
  StepResult step(const State& state, int action) const override;

  int forward_action(int state_index) const;
  int length() const { return length_; }

 private:
  int index_of(const State& s) const;

  int length_;
  double goal_reward_;
  std::uint64_t action_map_seed_;
  int reset_target_;
  EnvSpec spec_;
};

}  // namespace treesearch
