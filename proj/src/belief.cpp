#include "srmab/belief.hpp"

#include <stdexcept>

namespace srmab {

BeliefState collapse_belief(int observation) {
  if (observation != 0 && observation != 1) {
    throw std::invalid_argument("collapse_belief: observation must be 0 or 1");
  }
  return BeliefState{observation, 0, static_cast<double>(observation)};
}

double belief_value(const TransitionKernel& k, int omega, int u) {
  if (omega != 0 && omega != 1) {
    throw std::invalid_argument("belief_value: omega must be 0 or 1");
  }
  if (u < 0) throw std::invalid_argument("belief_value: u must be >= 0");
  double b = static_cast<double>(omega);
  for (int i = 0; i < u; ++i) b = k.passive_step(b);
  return b;
}

double anchor_value(const TransitionKernel& k, Anchor a) {
  switch (a) {
    case Anchor::Obs0: return 0.0;
    case Anchor::Obs1: return 1.0;
    case Anchor::Act0: return k.p01_a;
    case Anchor::Act1: return k.p11_a;
  }
  throw std::invalid_argument("anchor_value: bad anchor");
}

BeliefChain::BeliefChain(const TransitionKernel& k) : kernel_(k) {
  for (int a = 0; a < 4; ++a) {
    chains_[static_cast<std::size_t>(a)].push_back(
        anchor_value(kernel_, static_cast<Anchor>(a)));
  }
}

double BeliefChain::value(Anchor a, int age) {
  if (age < 0) throw std::invalid_argument("BeliefChain::value: negative age");
  auto& chain = chains_[static_cast<std::size_t>(a)];
  while (static_cast<int>(chain.size()) <= age) {
    chain.push_back(kernel_.passive_step(chain.back()));
  }
  return chain[static_cast<std::size_t>(age)];
}

void BeliefChain::ensure(int age) {
  for (int a = 0; a < 4; ++a) value(static_cast<Anchor>(a), age);
}

}  // namespace srmab
