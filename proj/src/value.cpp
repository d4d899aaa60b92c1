#include "srmab/value.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace srmab {

namespace {

// Scratch buffers reused across calls; the subsidy search evaluates this in a
// tight loop.
struct Workspace {
  std::vector<double> root;  // passive iterates of the query belief
  std::vector<double> act0;  // passive iterates of the two pull anchors
  std::vector<double> act1;
  std::vector<double> va0;   // values at the current residual level
  std::vector<double> va1;
};

thread_local Workspace tls_ws;

inline void hash_decision(std::uint64_t* h, bool active) {
  if (h) *h = (*h ^ static_cast<std::uint64_t>(active ? 0x9E37u : 0x85EBu)) * 0x100000001B3ull;
}

}  // namespace

ValuePair value_pair(const ValueQuery& q, std::uint64_t* pattern_hash) {
  if (q.horizon < 0) throw std::invalid_argument("value_pair: horizon must be >= 0");
  if (q.beta < 0.0 || q.beta > 1.0) throw std::invalid_argument("value_pair: beta must be in [0,1]");
  if (pattern_hash) *pattern_hash = 0xCBF29CE484222325ull;

  const TransitionKernel& k = q.kernel;
  const double m = q.subsidy;
  const double beta = q.beta;
  const int h = q.horizon;

  if (h == 0) return ValuePair{q.belief + m, q.belief};

  // The passive recurrence contracts geometrically, so chains are extended
  // only until successive beliefs are numerically constant and deeper ages
  // share the last slot. Keeps one evaluation at O(h * mixing depth).
  const auto fill_chain = [&k](std::vector<double>& chain, double anchor, int len) {
    chain.clear();
    chain.push_back(anchor);
    for (int i = 1; i < len; ++i) {
      const double next = k.passive_step(chain.back());
      if (std::abs(next - chain.back()) < 1e-15) break;
      chain.push_back(next);
    }
  };

  Workspace& ws = tls_ws;
  fill_chain(ws.root, q.belief, h + 1);
  fill_chain(ws.act0, k.p01_a, h);
  fill_chain(ws.act1, k.p11_a, h);
  const int root_cap = static_cast<int>(ws.root.size()) - 1;
  const int act_cap = static_cast<int>(std::max(ws.act0.size(), ws.act1.size())) - 1;
  ws.act0.resize(static_cast<std::size_t>(act_cap) + 1, ws.act0.back());
  ws.act1.resize(static_cast<std::size_t>(act_cap) + 1, ws.act1.back());
  const auto act_belief = [&](const std::vector<double>& chain, int j) {
    return chain[static_cast<std::size_t>(std::min(j, act_cap))];
  };

  ws.va0.resize(static_cast<std::size_t>(act_cap) + 1);
  ws.va1.resize(static_cast<std::size_t>(act_cap) + 1);

  // Residual 0: collect the belief, take the subsidy when it helps.
  const auto terminal = [m](double b) { return b + std::max(m, 0.0); };
  for (int j = 0; j <= std::min(h - 1, act_cap); ++j) {
    ws.va0[static_cast<std::size_t>(j)] = terminal(ws.act0[static_cast<std::size_t>(j)]);
    ws.va1[static_cast<std::size_t>(j)] = terminal(ws.act1[static_cast<std::size_t>(j)]);
  }
  double v_root = terminal(ws.root[static_cast<std::size_t>(std::min(h, root_cap))]);

  double top_passive = 0.0;
  double top_active = 0.0;

  for (int r = 1; r <= h; ++r) {
    // Values at the pull anchors from the previous level, saved before the
    // in-place ascending-age overwrite below invalidates index 0.
    const double cont0 = ws.va0[0];
    const double cont1 = ws.va1[0];

    const int top_age = std::min(h - r - 1, act_cap);
    for (int j = 0; j <= top_age; ++j) {
      const int succ = std::min(j + 1, act_cap);
      {
        const double b = act_belief(ws.act0, j);
        const double vp = b + m + beta * ws.va0[static_cast<std::size_t>(succ)];
        const double va = b + beta * (b * cont1 + (1.0 - b) * cont0);
        hash_decision(pattern_hash, va > vp);
        ws.va0[static_cast<std::size_t>(j)] = std::max(vp, va);
      }
      {
        const double b = act_belief(ws.act1, j);
        const double vp = b + m + beta * ws.va1[static_cast<std::size_t>(succ)];
        const double va = b + beta * (b * cont1 + (1.0 - b) * cont0);
        hash_decision(pattern_hash, va > vp);
        ws.va1[static_cast<std::size_t>(j)] = std::max(vp, va);
      }
    }

    const double b = ws.root[static_cast<std::size_t>(std::min(h - r, root_cap))];
    const double vp = b + m + beta * v_root;
    const double va = b + beta * (b * cont1 + (1.0 - b) * cont0);
    if (r < h) hash_decision(pattern_hash, va > vp);
    v_root = std::max(vp, va);
    if (r == h) {
      top_passive = vp;
      top_active = va;
    }
  }

  return ValuePair{top_passive, top_active};
}

}  // namespace srmab
