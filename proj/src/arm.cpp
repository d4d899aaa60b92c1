#include "srmab/arm.hpp"

#include <stdexcept>

namespace srmab {

int evolve_hidden_state(const TransitionKernel& k, int state, bool active,
                        double draw) {
  if (state != 0 && state != 1) {
    throw std::invalid_argument("evolve_hidden_state: state must be 0 or 1");
  }
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw std::invalid_argument("evolve_hidden_state: draw must lie in [0,1)");
  }
  return draw < k.good_next_prob(state, active) ? 1 : 0;
}

}  // namespace srmab
