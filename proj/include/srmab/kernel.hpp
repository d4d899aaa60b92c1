#pragma once

#include <string>
#include <vector>

namespace srmab {

// Two-state, two-action transition model of one arm. Rows are implied
// stochastic: P(s -> 0) = 1 - P(s -> 1), so four entries suffice.
struct TransitionKernel {
  double p01_p = 0.0;  // P(0 -> 1 | passive)
  double p11_p = 0.0;  // P(1 -> 1 | passive)
  double p01_a = 0.0;  // P(0 -> 1 | active)
  double p11_a = 0.0;  // P(1 -> 1 | active)

  double passive_step(double belief) const {
    return belief * p11_p + (1.0 - belief) * p01_p;
  }
  // Belief one step after a pull that observed `observation`.
  double active_anchor(int observation) const {
    return observation ? p11_a : p01_a;
  }
  double good_next_prob(int state, bool active) const {
    if (active) return state ? p11_a : p01_a;
    return state ? p11_p : p01_p;
  }
  // Limit of the passive belief recurrence.
  double passive_fixed_point() const {
    return p01_p / (1.0 - p11_p + p01_p);
  }

  friend bool operator==(const TransitionKernel&, const TransitionKernel&) = default;
};

struct KernelValidation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Range check plus the two natural constraints: interventions help
// (p01_a>p01_p, p11_a>p11_p) and the good state is sticky (p11_a>p01_a,
// p11_p>p01_p). Non-finite entries throw std::invalid_argument.
KernelValidation validate_kernel(const TransitionKernel& k);

// One-step expected belief gain of pulling versus not pulling at belief b.
double myopic_index(const TransitionKernel& k, double belief);

}  // namespace srmab
