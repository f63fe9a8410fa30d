#include "treesearch/cart_pole.hpp"

#include <cmath>
#include <stdexcept>

#include "treesearch/rng.hpp"

namespace treesearch {

CartPoleDet::CartPoleDet(Params params) : params_(params) {
  if (params_.horizon < 1)
    throw std::invalid_argument("CartPoleDet: horizon must be >= 1");
  spec_.name = "cartpole";
  spec_.action_count = 2;
  spec_.horizon = params_.horizon;
  spec_.reward_bound =
      std::max(std::abs(params_.step_reward), std::abs(params_.failure_reward));
  spec_.state_dim = 4;
  spec_.metric = Metric::SupNorm;
}

State CartPoleDet::reset(std::uint64_t episode_seed) const {
  Rng rng(episode_seed);
  State s(4);
  for (double& v : s) v = rng.range(-params_.reset_span, params_.reset_span);
  return s;
}

StepResult CartPoleDet::step(const State& state, int action) const {
  check_action(action);
  if (state.size() != 4)
    throw std::invalid_argument("CartPoleDet::step: bad state dimension");

  const double x = state[0], x_dot = state[1];
  const double theta = state[2], theta_dot = state[3];
  if (std::abs(x) > params_.x_limit || std::abs(theta) > params_.angle_limit)
    throw std::logic_error("CartPoleDet::step: state is terminal");

  const double total_mass = params_.cart_mass + params_.pole_mass;
  const double pole_mass_length = params_.pole_mass * params_.half_length;
  const double force = action == 1 ? params_.force : -params_.force;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);

  const double temp =
      (force + pole_mass_length * theta_dot * theta_dot * sin_t) / total_mass;
  const double theta_acc =
      (params_.gravity * sin_t - cos_t * temp) /
      (params_.half_length *
       (4.0 / 3.0 - params_.pole_mass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

  State next{x + params_.dt * x_dot, x_dot + params_.dt * x_acc,
             theta + params_.dt * theta_dot, theta_dot + params_.dt * theta_acc};

  const bool failed = std::abs(next[0]) > params_.x_limit ||
                      std::abs(next[2]) > params_.angle_limit;
  if (failed) return {std::move(next), params_.failure_reward, true};
  return {std::move(next), params_.step_reward, false};
}

}  // namespace treesearch
