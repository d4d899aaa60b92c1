#pragma once

#include <array>
#include <vector>

#include "srmab/belief.hpp"
#include "srmab/whittle.hpp"

namespace srmab {

// Infinite-horizon index per reachable chain node of one kernel, ages
// 0..age_cap on all four anchors. Immutable after precompute; lookups are
// plain reads and safe to share across threads.
struct IndexTable {
  int age_cap = 0;
  std::array<std::vector<double>, 4> w_inf;
  std::array<std::vector<int>, 4> horizon_used;
  int fallback_nodes = 0;  // nodes resolved from a ConvergenceError midpoint

  double lookup(Anchor a, int age) const;
  double lookup(ChainNode n) const { return lookup(n.anchor, n.age); }
  std::size_t entries() const;

  // True when w_inf is non-increasing along every chain's ages. Recorded as a
  // diagnostic; not an invariant of valid kernels.
  bool monotone_along_chains() const;
};

// Propagate keeps the per-node ConvergenceError contract. LastIterateMidpoint
// stores the midpoint of the error's final iterates instead (bounded residual
// wobble, fine for a ranking cap) and counts the node in fallback_nodes.
enum class NonConvergence { Propagate, LastIterateMidpoint };

IndexTable precompute_index_table(const TransitionKernel& k, int age_cap,
                                  double beta = 1.0,
                                  double tol = kDefaultSubsidyTol,
                                  int max_horizon = kDefaultMaxHorizon,
                                  NonConvergence mode = NonConvergence::Propagate);

}  // namespace srmab
