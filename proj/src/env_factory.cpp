#include "treesearch/env_factory.hpp"

#include <stdexcept>

#include "treesearch/cart_pole.hpp"
#include "treesearch/chain.hpp"
#include "treesearch/frozen_lake.hpp"

namespace treesearch {

std::unique_ptr<EnvModel> make_env(const EnvParams& p) {
  if (p.name == "chain")
    return std::make_unique<Chain>(p.length, p.goal_reward, p.map_seed,
                                   p.horizon);
  if (p.name == "loopy-chain")
    return std::make_unique<LoopyChain>(p.length, p.goal_reward, p.map_seed,
                                        /*reset_target=*/1, p.horizon);
  if (p.name == "frozenlake") return std::make_unique<FrozenLakeDet>(p.horizon);
  if (p.name == "cartpole") {
    CartPoleDet::Params cp;
    if (p.horizon > 0) cp.horizon = p.horizon;
    cp.angle_limit = p.cart_angle_limit_deg * 3.14159265358979323846 / 180.0;
    cp.x_limit = p.cart_x_limit;
    return std::make_unique<CartPoleDet>(cp);
  }
  throw std::invalid_argument("make_env: unknown environment '" + p.name + "'");
}

}  // namespace treesearch
