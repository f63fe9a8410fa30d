#include "treesearch/frozen_lake.hpp"

#include <cmath>
#include <stdexcept>

namespace {

constexpr const char* kMap[treesearch::FrozenLakeDet::kSize] = {
    "SFFF",
    "FHFH",
    "FFFH",
    "HFFG",
};

}  // namespace

namespace treesearch {

FrozenLakeDet::FrozenLakeDet(int horizon) {
  spec_.name = "frozenlake";
  spec_.action_count = 4;
  spec_.horizon = horizon > 0 ? horizon : 100;
  spec_.reward_bound = 1.0;
  spec_.state_dim = 2;
  spec_.metric = Metric::SupNorm;
}

char FrozenLakeDet::cell(int row, int col) const {
  if (row < 0 || row >= kSize || col < 0 || col >= kSize)
    throw std::logic_error("FrozenLakeDet: cell out of range");
  return kMap[row][col];
}

State FrozenLakeDet::reset(std::uint64_t) const { return State{0.0, 0.0}; }

StepResult FrozenLakeDet::step(const State& state, int action) const {
  check_action(action);
  if (state.size() != 2)
    throw std::invalid_argument("FrozenLakeDet::step: bad state dimension");
  const int row = static_cast<int>(std::llround(state[0]));
  const int col = static_cast<int>(std::llround(state[1]));
  const char here = cell(row, col);
  if (here == 'H' || here == 'G')
    throw std::logic_error("FrozenLakeDet::step: state is terminal");

  int nr = row, nc = col;
  switch (action) {
    case 0: nc = std::max(col - 1, 0); break;          // left
    case 1: nr = std::min(row + 1, kSize - 1); break;  // down
    case 2: nc = std::min(col + 1, kSize - 1); break;  // right
    case 3: nr = std::max(row - 1, 0); break;          // up
  }
  const char there = cell(nr, nc);
  State next{static_cast<double>(nr), static_cast<double>(nc)};
  if (there == 'G') return {std::move(next), 1.0, true};
  if (there == 'H') return {std::move(next), 0.0, true};
  return {std::move(next), 0.0, false};
}

}  // namespace treesearch
