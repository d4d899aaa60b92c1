#include <cmath>

#include "doctest.h"
#include "srmab/augmented.hpp"
#include "srmab/cohort.hpp"
#include "srmab/value.hpp"

using namespace srmab;

namespace {
const TransitionKernel kExample{0.06, 0.46, 0.46, 0.60};

void check_rows_stochastic(const AugmentedMdp& mdp) {
  for (int from = 0; from < mdp.n(); ++from) {
    double sum_p = 0.0, sum_a = 0.0;
    for (int to = 0; to < mdp.n(); ++to) {
      const double pp = mdp.prob(false, from, to);
      const double pa = mdp.prob(true, from, to);
      CHECK(pp >= 0.0);
      CHECK(pa >= 0.0);
      sum_p += pp;
      sum_a += pa;
    }
    CHECK(std::abs(sum_p - 1.0) <= 1e-12);
    CHECK(std::abs(sum_a - 1.0) <= 1e-12);
  }
}
}  // namespace

TEST_CASE("state counts match the window formula") {
  CHECK(augmented_mdp_reduction(kExample, 2, 4).n() == 8);
  CHECK(augmented_mdp_reduction(kExample, 1, 2).n() == 3);
  CHECK(augmented_mdp_reduction(kExample, 3, 8).n() == 33);
  for (int t1 : {1, 2, 4}) {
    for (int span : {1, 2, 5, 9}) {
      const int t2 = t1 + span;
      CHECK(augmented_mdp_reduction(kExample, t1, t2).n() == t2 + span * span);
    }
  }
}

TEST_CASE("invalid windows are rejected") {
  CHECK_THROWS_AS(augmented_mdp_reduction(kExample, 4, 4), InvalidWindowError);
  CHECK_THROWS_AS(augmented_mdp_reduction(kExample, 5, 3), InvalidWindowError);
  CHECK_THROWS_AS(augmented_mdp_reduction(kExample, 0, 3), InvalidWindowError);
}

TEST_CASE("every row is stochastic and the sink absorbs") {
  SeedStream stream{400, 0};
  for (int trial = 0; trial < 10; ++trial) {
    const TransitionKernel k = sample_kernel(stream);
    const AugmentedMdp mdp = augmented_mdp_reduction(k, 2, 6, 0.3);
    check_rows_stochastic(mdp);
    const int sink = mdp.sink_index();
    CHECK(mdp.states[static_cast<std::size_t>(sink)].kind == AugmentedMdp::Kind::Sink);
    CHECK(mdp.prob(false, sink, sink) == 1.0);
    CHECK(mdp.prob(true, sink, sink) == 1.0);
  }
}

TEST_CASE("construction layout: prefix, belief blocks, sink") {
  const AugmentedMdp mdp = augmented_mdp_reduction(kExample, 2, 4, 0.0);
  // 1 pre-arrival, 2 at t=2, 4 at t=3, sink
  REQUIRE(mdp.n() == 8);
  CHECK(mdp.states[0].kind == AugmentedMdp::Kind::PreArrival);
  CHECK(mdp.states[1].kind == AugmentedMdp::Kind::Belief);
  CHECK(mdp.states[1].time == 2);
  CHECK(mdp.states[1].belief == 0.0);  // known bad at arrival
  CHECK(mdp.states[2].belief == 1.0);
  // p_start = 0: the pre-arrival state feeds the known-bad node
  CHECK(mdp.prob(false, 0, 1) == 1.0);
  CHECK(mdp.prob(true, 0, 1) == 1.0);

  // passive keeps the chain, age + 1
  const auto& s3 = mdp.states[3];
  CHECK(s3.time == 3);
  CHECK(s3.node.anchor == Anchor::Obs0);
  CHECK(s3.node.age == 1);
  CHECK(mdp.prob(false, 1, 3) == 1.0);

  // active from the known-good node at t=2 splits by belief over pull anchors
  const int act1_idx = 6;  // block t=3: [obs0@1, obs1@1, act0@0, act1@0]
  CHECK(mdp.states[6].node.anchor == Anchor::Act1);
  CHECK(mdp.prob(true, 2, act1_idx) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mdp.states[5].node.anchor == Anchor::Act0);
  CHECK(mdp.prob(true, 1, 5) == doctest::Approx(1.0).epsilon(1e-15));

  // final present step routes everything to the sink
  for (int from = 3; from <= 6; ++from) {
    CHECK(mdp.prob(false, from, mdp.sink_index()) == 1.0);
    CHECK(mdp.prob(true, from, mdp.sink_index()) == 1.0);
  }
}

TEST_CASE("belief values on the augmented states follow the chains") {
  const AugmentedMdp mdp = augmented_mdp_reduction(kExample, 1, 4, 0.5);
  for (const auto& s : mdp.states) {
    if (s.kind != AugmentedMdp::Kind::Belief) continue;
    BeliefChain chain(kExample);
    CHECK(s.belief == chain.value(s.node));
  }
}

TEST_CASE("value iteration on the reduction matches the chain recursion") {
  // Two routes to the same numbers: backward induction over the explicit
  // window MDP versus the belief-chain value recursion. They share only the
  // kernel.
  SeedStream stream{606, 0};
  std::vector<TransitionKernel> kernels{kExample};
  kernels.push_back(sample_kernel(stream));
  kernels.push_back(sample_kernel(stream));

  const int t_arrive = 1, t_depart = 8;
  for (const TransitionKernel& k : kernels) {
    const AugmentedMdp mdp = augmented_mdp_reduction(k, t_arrive, t_depart, 0.5);
    for (double m : {-0.2, 0.0, 0.3}) {
      // values over the remaining window; sink contributes nothing
      std::vector<double> value(static_cast<std::size_t>(mdp.n()), 0.0);
      for (int t = t_depart - 1; t >= t_arrive; --t) {
        std::vector<double> next = value;
        for (int i = 0; i < mdp.n(); ++i) {
          const auto& s = mdp.states[static_cast<std::size_t>(i)];
          if (s.kind != AugmentedMdp::Kind::Belief || s.time != t) continue;
          double passive = s.belief + m;
          double active = s.belief;
          for (int to = 0; to < mdp.n(); ++to) {
            passive += mdp.prob(false, i, to) * next[static_cast<std::size_t>(to)];
            active += mdp.prob(true, i, to) * next[static_cast<std::size_t>(to)];
          }
          value[static_cast<std::size_t>(i)] = std::max(passive, active);

          const int horizon = t_depart - 1 - t;
          const ValuePair direct = value_pair({k, s.belief, m, horizon, 1.0});
          CHECK(passive == doctest::Approx(direct.v_passive).epsilon(1e-10));
          CHECK(active == doctest::Approx(direct.v_active).epsilon(1e-10));
        }
      }
    }
  }
}
