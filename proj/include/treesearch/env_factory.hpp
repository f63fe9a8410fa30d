#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "treesearch/env.hpp"

namespace treesearch {

// Declarative environment description, serializable into run manifests.
struct EnvParams {
  std::string name = "chain";  // chain | loopy-chain | frozenlake | cartpole
  int length = 10;             // chain variants
  double goal_reward = 1.0;    // chain variants
  std::uint64_t map_seed = 0;  // chain variants: forward-action map seed
  int horizon = 0;             // 0 = environment default
  double cart_angle_limit_deg = 12.0;
  double cart_x_limit = 2.4;
};

// Builds an environment from its description; throws std::invalid_argument
// on an unknown name or invalid parameters.
std::unique_ptr<EnvModel> make_env(const EnvParams& params);

}  // namespace treesearch
