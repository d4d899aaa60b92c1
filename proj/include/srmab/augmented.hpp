#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "srmab/belief.hpp"
#include "srmab/kernel.hpp"

namespace srmab {

struct InvalidWindowError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Explicit finite MDP equivalent to one arm that arrives at t_arrive and
// departs at t_depart: pre-arrival placeholder states, per-step belief tuples,
// and one absorbing unavailable sink. State count is
// t_depart + (t_depart - t_arrive)^2.
struct AugmentedMdp {
  enum class Kind { PreArrival, Belief, Sink };
  struct State {
    Kind kind = Kind::Sink;
    int time = 0;
    ChainNode node{};      // Belief states only
    double belief = 0.0;   // Belief states only
    std::string label;
  };

  std::vector<State> states;
  // Row-major [from * n + to], one table per action.
  std::vector<double> trans_passive;
  std::vector<double> trans_active;

  int n() const { return static_cast<int>(states.size()); }
  int sink_index() const { return n() - 1; }
  double prob(bool active, int from, int to) const {
    return (active ? trans_active : trans_passive)[static_cast<std::size_t>(from) * states.size() + to];
  }
};

AugmentedMdp augmented_mdp_reduction(const TransitionKernel& k, int t_arrive,
                                     int t_depart, double p_start = 0.0);

}  // namespace srmab
