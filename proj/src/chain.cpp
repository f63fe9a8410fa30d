#include "treesearch/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "treesearch/rng.hpp"

namespace {

int seeded_bit(std::uint64_t seed, int index) {
  return static_cast<int>(
      treesearch::splitmix64(treesearch::mix_seed(seed, index)) & 1u);
}

int state_index(const treesearch::State& s, const char* who) {
  if (s.size() != 1)
    throw std::invalid_argument(std::string(who) + ": bad state dimension");
  return static_cast<int>(std::llround(s[0]));
}

}  // namespace

namespace treesearch {

Chain::Chain(int length, double goal_reward, std::uint64_t action_map_seed,
             int horizon)
    : length_(length),
      goal_reward_(goal_reward),
      action_map_seed_(action_map_seed) {
  if (length < 1) throw std::invalid_argument("Chain: length must be >= 1");
  spec_.name = "chain";
  spec_.action_count = 2;
  spec_.horizon = horizon > 0 ? horizon : 2 * length;
  spec_.reward_bound = std::abs(goal_reward);
  spec_.state_dim = 1;
  spec_.metric = Metric::SupNorm;
}

State Chain::reset(std::uint64_t) const { return State{0.0}; }

int Chain::forward_action(int state_index) const {
  return seeded_bit(action_map_seed_, state_index);
}

int Chain::index_of(const State& s) const {
  const int idx = state_index(s, "Chain");
  if (idx < 0 || idx >= length_)
    throw std::logic_error("Chain::step: state is terminal");
  return idx;
}

StepResult Chain::step(const State& state, int action) const {
  check_action(action);
  const int idx = index_of(state);
  if (action == forward_action(idx)) {
    if (idx + 1 == length_)
      return {State{static_cast<double>(length_)}, goal_reward_, true};
    return {State{static_cast<double>(idx + 1)}, 0.0, false};
  }
  // Dead absorbing state, distinct from every corridor index.
  return {State{-1.0}, 0.0, true};
}

LoopyChain::LoopyChain(int length, double goal_reward,
                       std::uint64_t action_map_seed, int reset_target,
                       int horizon)
    : length_(length),
      goal_reward_(goal_reward),
      action_map_seed_(action_map_seed),
      reset_target_(reset_target) {
  if (length < 1)
    throw std::invalid_argument("LoopyChain: length must be >= 1");
  if (reset_target < 1 || reset_target > length)
    throw std::invalid_argument("LoopyChain: reset target out of range");
  spec_.name = "loopy-chain";
  spec_.action_count = 2;
  spec_.horizon = horizon > 0 ? horizon : 2 * length;
  spec_.reward_bound = std::abs(goal_reward);
  spec_.state_dim = 1;
  spec_.metric = Metric::SupNorm;
}

State LoopyChain::reset(std::uint64_t) const {
  return State{static_cast<double>(reset_target_)};
}

int LoopyChain::forward_action(int state_index) const {
  return seeded_bit(action_map_seed_, state_index);
}

int LoopyChain::index_of(const State& s) const {
  const int idx = state_index(s, "LoopyChain");
  if (idx < 1 || idx > length_)
    throw std::logic_error("LoopyChain::step: state is terminal");
  return idx;
}

StepResult LoopyChain::step(const State& state, int action) const {
  check_action(action);
  const int idx = index_of(state);
  if (action == forward_action(idx)) {
    if (idx == length_)
      return {State{static_cast<double>(length_ + 1)}, goal_reward_, true};
    return {State{static_cast<double>(idx + 1)}, 0.0, false};
  }
  return {State{static_cast<double>(reset_target_)}, 0.0, false};
}

}  // namespace treesearch
