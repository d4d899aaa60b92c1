#pragma once

#include <cstdint>

#include "srmab/kernel.hpp"

namespace srmab {

struct ValueQuery {
  TransitionKernel kernel;
  double belief = 0.0;
  double subsidy = 0.0;  // m, paid per passive step
  int horizon = 0;       // future steps after the current one
  double beta = 1.0;
};

// Passive / active action values at the query's root. The overall value is
// max of the two; at horizon 0 they are (b + m, b).
struct ValuePair {
  double v_passive = 0.0;
  double v_active = 0.0;
};

// Finite-horizon backward induction over the reachable belief set. The
// reachable set from a root belief is the root's passive chain plus the two
// active-anchor chains, so one evaluation costs O(horizon^2) with O(horizon)
// memory. Optionally hashes the argmax pattern of every interior decision
// (used to detect regimes where the optimal policy structure is constant).
ValuePair value_pair(const ValueQuery& q, std::uint64_t* pattern_hash = nullptr);

}  // namespace srmab
