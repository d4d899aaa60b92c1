#pragma once

#include "srmab/belief.hpp"
#include "srmab/kernel.hpp"

namespace srmab {

// One streaming arm. hidden_state drives rewards and observations only; no
// policy reads it directly.
struct Arm {
  int id = 0;
  TransitionKernel kernel;
  int arrival_time = 1;
  int lifetime = 1;
  int hidden_state = 0;
  ChainNode belief{};

  // Present steps left including the current one; >= 1 while present.
  int remaining_steps(int t) const { return arrival_time + lifetime - t; }
  // Value-function horizon used by index policies: future present steps,
  // 0 on the arm's final day.
  int index_horizon(int t) const { return remaining_steps(t) - 1; }
  bool present(int t) const { return t >= arrival_time && remaining_steps(t) >= 1; }
};

// Next hidden state given a uniform draw. Strict `draw < P(state -> good)`
// so boundary behavior is pinned. Throws when draw is outside [0, 1).
int evolve_hidden_state(const TransitionKernel& k, int state, bool active,
                        double draw);

}  // namespace srmab
