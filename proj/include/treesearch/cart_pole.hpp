#pragma once

#include "treesearch/env.hpp"

namespace treesearch {

// Deterministic cart-pole balancing. State is [x, x_dot, theta, theta_dot];
// actions push the cart left (0) or right (1). Every surviving step pays a
// small positive reward; the step that leaves the allowed envelope pays -1
// and terminates. Euler integration with the classic constants.
class CartPoleDet : public EnvModel {
 public:
  struct Params {
    double gravity = 9.8;
    double cart_mass = 1.0;
    double pole_mass = 0.1;
    double half_length = 0.5;   // half the pole length
    double force = 10.0;
    double dt = 0.02;
    double angle_limit = 12.0 * 3.14159265358979323846 / 180.0;  // radians
    double x_limit = 2.4;
    int horizon = 400;
    double step_reward = 0.005;
    double failure_reward = -1.0;
    double reset_span = 0.02;   // init perturbation: uniform +-span per dim
  };

  CartPoleDet() : CartPoleDet(Params{}) {}
  explicit CartPoleDet(Params params);

  const EnvSpec& spec() const override { return spec_; }
  State reset(std::uint64_t episode_seed) const override;
  StepResult step(const State& state, int action) const override;

  const Params& params() const { return params_; }

 private:
  Params params_;
  EnvSpec spec_;
};

}  // namespace treesearch
