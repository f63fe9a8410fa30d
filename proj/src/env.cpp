#include "treesearch/env.hpp"

#include <cmath>
#include <stdexcept>

namespace treesearch {

double state_distance(const State& a, const State& b, Metric metric) {
  if (a.size() != b.size())
    throw std::invalid_argument("state_distance: dimension mismatch");
  switch (metric) {
    case Metric::SupNorm: {
      double d = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
      return d;
    }
    case Metric::L2: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
  }
  throw std::logic_error("state_distance: unknown metric");
}

void EnvModel::check_action(int action) const {
  if (action < 0 || action >= spec().action_count)
    throw std::invalid_argument("step: action out of range");
}

}  // namespace treesearch
