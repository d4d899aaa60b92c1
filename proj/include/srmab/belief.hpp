#pragma once

#include <array>
#include <vector>

#include "srmab/kernel.hpp"

namespace srmab {

// Anchors of the belief chains reachable in simulation. ObsX: the state was
// known to be X exactly (arrival, or the instant of a pull). ActX: one active
// transition after observing X, i.e. the belief the step after a pull.
enum class Anchor : int { Obs0 = 0, Obs1 = 1, Act0 = 2, Act1 = 3 };

// Integer key for a belief value: anchor plus passive steps since the anchor.
// Memoization and tables key on this pair, never on the float value.
struct ChainNode {
  Anchor anchor = Anchor::Obs0;
  int age = 0;
  friend bool operator==(const ChainNode&, const ChainNode&) = default;
};

// (last observed state, days since last pull) view of a belief.
struct BeliefState {
  int omega = 0;
  int u = 0;
  double b = 0.0;
};

// Belief right after observing the true state on a pull: u resets to 0.
BeliefState collapse_belief(int observation);

// Passive-chain belief from an observation anchor: b(0)=omega,
// b(u+1)=b(u)*p11_p+(1-b(u))*p01_p. Pure; same inputs give identical bits.
double belief_value(const TransitionKernel& k, int omega, int u);

double anchor_value(const TransitionKernel& k, Anchor a);

// Lazily extended passive iterates for the four anchors of one kernel.
// Mutating calls are not thread-safe; ensure() up front for shared readers.
class BeliefChain {
 public:
  explicit BeliefChain(const TransitionKernel& k);

  double value(Anchor a, int age);
  double value(ChainNode n) { return value(n.anchor, n.age); }
  void ensure(int age);
  const TransitionKernel& kernel() const { return kernel_; }

 private:
  TransitionKernel kernel_;
  std::array<std::vector<double>, 4> chains_;
};

}  // namespace srmab
