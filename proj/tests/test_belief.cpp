#include <cmath>

#include "doctest.h"
#include "srmab/belief.hpp"
#include "srmab/cohort.hpp"

using namespace srmab;

namespace {
const TransitionKernel kExample{0.06, 0.46, 0.46, 0.60};
}

TEST_CASE("belief anchors and one-step values") {
  CHECK(belief_value(kExample, 1, 0) == 1.0);
  CHECK(belief_value(kExample, 0, 0) == 0.0);
  CHECK(belief_value(kExample, 1, 1) == doctest::Approx(0.46).epsilon(1e-15));
  CHECK(belief_value(kExample, 0, 1) == doctest::Approx(0.06).epsilon(1e-15));
}

TEST_CASE("belief chain converges to the passive fixed point") {
  CHECK(kExample.passive_fixed_point() == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(belief_value(kExample, 1, 200) == doctest::Approx(0.10).epsilon(1e-10));
  CHECK(belief_value(kExample, 0, 200) == doctest::Approx(0.10).epsilon(1e-10));
}

TEST_CASE("belief chain is monotone toward the fixed point") {
  SeedStream stream{7, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const TransitionKernel k = sample_kernel(stream);
    double prev1 = 1.0, prev0 = 0.0;
    for (int u = 1; u <= 30; ++u) {
      const double b1 = belief_value(k, 1, u);
      const double b0 = belief_value(k, 0, u);
      CHECK(b1 <= prev1 + 1e-15);
      CHECK(b0 >= prev0 - 1e-15);
      prev1 = b1;
      prev0 = b0;
    }
  }
}

TEST_CASE("belief_value is deterministic to the bit") {
  for (int u : {0, 1, 5, 17}) {
    CHECK(belief_value(kExample, 1, u) == belief_value(kExample, 1, u));
  }
}

TEST_CASE("collapse_belief resets to the observation") {
  const BeliefState one = collapse_belief(1);
  CHECK(one.omega == 1);
  CHECK(one.u == 0);
  CHECK(one.b == 1.0);
  const BeliefState zero = collapse_belief(0);
  CHECK(zero.omega == 0);
  CHECK(zero.u == 0);
  CHECK(zero.b == 0.0);
  CHECK_THROWS_AS(collapse_belief(2), std::invalid_argument);
}

TEST_CASE("collapse then one passive step matches the chain") {
  const BeliefState s = collapse_belief(1);
  CHECK(kExample.passive_step(s.b) == belief_value(kExample, 1, 1));
}

TEST_CASE("BeliefChain agrees with belief_value and the anchors") {
  BeliefChain chain(kExample);
  for (int u = 0; u <= 12; ++u) {
    CHECK(chain.value(Anchor::Obs1, u) == belief_value(kExample, 1, u));
    CHECK(chain.value(Anchor::Obs0, u) == belief_value(kExample, 0, u));
  }
  CHECK(chain.value(Anchor::Act1, 0) == kExample.p11_a);
  CHECK(chain.value(Anchor::Act0, 0) == kExample.p01_a);
  CHECK(chain.value(Anchor::Act1, 3) ==
        kExample.passive_step(kExample.passive_step(kExample.passive_step(kExample.p11_a))));
}

TEST_CASE("expected-belief dominance of an active first step") {
  // Exact affine trajectories; the action sequence after step 0 is shared.
  SeedStream stream{2024, 0};
  for (int trial = 0; trial < 120; ++trial) {
    const TransitionKernel k = sample_kernel(stream);
    const double b0 = stream.u01();
    std::vector<bool> shared_tail;
    for (int t = 1; t < 10; ++t) shared_tail.push_back(stream.u01() < 0.5);

    double rho_a = b0 * k.p11_a + (1.0 - b0) * k.p01_a;
    double rho_p = k.passive_step(b0);
    for (std::size_t i = 0;; ++i) {
      CHECK(rho_a > rho_p);
      if (i == shared_tail.size()) break;
      const bool active = shared_tail[i];
      rho_a = active ? rho_a * k.p11_a + (1.0 - rho_a) * k.p01_a : k.passive_step(rho_a);
      rho_p = active ? rho_p * k.p11_a + (1.0 - rho_p) * k.p01_a : k.passive_step(rho_p);
    }
  }
}
