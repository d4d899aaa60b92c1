#include "srmab/augmented.hpp"

#include <sstream>

namespace srmab {

namespace {

std::string belief_label(const ChainNode& n, int time) {
  std::ostringstream os;
  const char* names[4] = {"obs0", "obs1", "act0", "act1"};
  os << "<" << names[static_cast<int>(n.anchor)] << "+" << n.age << ", t=" << time << ">";
  return os.str();
}

}  // namespace

AugmentedMdp augmented_mdp_reduction(const TransitionKernel& k, int t_arrive,
                                     int t_depart, double p_start) {
  if (!(0 < t_arrive && t_arrive < t_depart)) {
    throw InvalidWindowError("augmented_mdp_reduction: need 0 < t_arrive < t_depart");
  }
  if (p_start < 0.0 || p_start > 1.0) {
    throw std::invalid_argument("augmented_mdp_reduction: p_start must be in [0,1]");
  }

  AugmentedMdp mdp;
  BeliefChain chain(k);

  // Present-step layout at time t (d = t - t_arrive steps since arrival):
  // the two never-pulled nodes at age d, then the two pull chains with ages
  // 0..d-1. Block size 2(d+1); totals telescope to
  // t_depart + (t_depart - t_arrive)^2 states.
  std::vector<int> block_start(static_cast<std::size_t>(t_depart) + 1, -1);

  for (int t = 1; t < t_arrive; ++t) {
    AugmentedMdp::State s;
    s.kind = AugmentedMdp::Kind::PreArrival;
    s.time = t;
    s.label = "<U, t=" + std::to_string(t) + ">";
    mdp.states.push_back(std::move(s));
  }
  for (int t = t_arrive; t < t_depart; ++t) {
    const int d = t - t_arrive;
    block_start[static_cast<std::size_t>(t)] = static_cast<int>(mdp.states.size());
    std::vector<ChainNode> nodes;
    nodes.push_back(ChainNode{Anchor::Obs0, d});
    nodes.push_back(ChainNode{Anchor::Obs1, d});
    for (int j = 0; j < d; ++j) nodes.push_back(ChainNode{Anchor::Act0, j});
    for (int j = 0; j < d; ++j) nodes.push_back(ChainNode{Anchor::Act1, j});
    for (const ChainNode& n : nodes) {
      AugmentedMdp::State s;
      s.kind = AugmentedMdp::Kind::Belief;
      s.time = t;
      s.node = n;
      s.belief = chain.value(n);
      s.label = belief_label(n, t);
      mdp.states.push_back(std::move(s));
    }
  }
  {
    AugmentedMdp::State s;
    s.kind = AugmentedMdp::Kind::Sink;
    s.time = t_depart;
    s.label = "<U, t=" + std::to_string(t_depart) + ">";
    mdp.states.push_back(std::move(s));
  }

  const int n = mdp.n();
  mdp.trans_passive.assign(static_cast<std::size_t>(n) * n, 0.0);
  mdp.trans_active.assign(static_cast<std::size_t>(n) * n, 0.0);

  const auto index_of = [&](int time, const ChainNode& node) {
    const int base = block_start[static_cast<std::size_t>(time)];
    const int d = time - t_arrive;
    if (node.anchor == Anchor::Obs0) return base;
    if (node.anchor == Anchor::Obs1) return base + 1;
    const int offset = (node.anchor == Anchor::Act0) ? 0 : d;
    return base + 2 + offset + node.age;
  };
  const auto set = [&](std::vector<double>& table, int from, int to, double p) {
    table[static_cast<std::size_t>(from) * n + to] += p;
  };
  const auto set_both = [&](int from, int to, double p) {
    set(mdp.trans_passive, from, to, p);
    set(mdp.trans_active, from, to, p);
  };

  for (int i = 0; i < n; ++i) {
    const AugmentedMdp::State& s = mdp.states[static_cast<std::size_t>(i)];
    switch (s.kind) {
      case AugmentedMdp::Kind::PreArrival: {
        // Actions have no effect before arrival.
        if (s.time + 1 < t_arrive) {
          set_both(i, i + 1, 1.0);
        } else {
          set_both(i, index_of(t_arrive, ChainNode{Anchor::Obs0, 0}), 1.0 - p_start);
          set_both(i, index_of(t_arrive, ChainNode{Anchor::Obs1, 0}), p_start);
        }
        break;
      }
      case AugmentedMdp::Kind::Belief: {
        if (s.time + 1 >= t_depart) {
          set_both(i, mdp.sink_index(), 1.0);
          break;
        }
        set(mdp.trans_passive, i, index_of(s.time + 1, ChainNode{s.node.anchor, s.node.age + 1}), 1.0);
        // Pull: observe good with probability b, then one active transition.
        set(mdp.trans_active, i, index_of(s.time + 1, ChainNode{Anchor::Act1, 0}), s.belief);
        set(mdp.trans_active, i, index_of(s.time + 1, ChainNode{Anchor::Act0, 0}), 1.0 - s.belief);
        break;
      }
      case AugmentedMdp::Kind::Sink:
        set_both(i, i, 1.0);
        break;
    }
  }

  return mdp;
}

}  // namespace srmab
