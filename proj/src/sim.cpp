#include "srmab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "srmab/arm.hpp"
#include "srmab/interpolate.hpp"
#include "srmab/value.hpp"

namespace srmab {

std::string to_string(PolicyId id) {
  switch (id) {
    case PolicyId::NoIntervention: return "no_intervention";
    case PolicyId::Random: return "random";
    case PolicyId::Myopic: return "myopic";
    case PolicyId::ThresholdWhittle: return "tw";
    case PolicyId::Linear: return "linear";
    case PolicyId::Logistic: return "logistic";
    case PolicyId::Exact: return "exact";
  }
  return "?";
}

std::optional<PolicyId> parse_policy(std::string_view name) {
  if (name == "no_intervention" || name == "none") return PolicyId::NoIntervention;
  if (name == "random") return PolicyId::Random;
  if (name == "myopic") return PolicyId::Myopic;
  if (name == "tw") return PolicyId::ThresholdWhittle;
  if (name == "linear") return PolicyId::Linear;
  if (name == "logistic") return PolicyId::Logistic;
  if (name == "exact") return PolicyId::Exact;
  return std::nullopt;
}

IndexTables IndexTables::build(const Cohort& cohort, int age_cap, double beta,
                               double tol, int max_horizon) {
  // The table value is a saturation cap for index ranking; 1e-3 is far below
  // any ranking-relevant difference and keeps slowly-wobbling undiscounted
  // tails inside the convergence rule.
  const double table_tol = std::max(tol, 1e-3);
  auto tables = std::make_shared<std::vector<IndexTable>>();
  tables->reserve(cohort.size());
  for (const auto& row : cohort.rows) {
    tables->push_back(precompute_index_table(row.kernel, age_cap, beta, table_tol,
                                             max_horizon,
                                             NonConvergence::LastIterateMidpoint));
  }
  IndexTables out;
  out.tables_ = std::move(tables);
  return out;
}

std::vector<int> select_top_k(const std::vector<double>& indices,
                              const std::vector<int>& ids, int k) {
  const int n = static_cast<int>(indices.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto better = [&](int a, int b) {
    if (indices[static_cast<std::size_t>(a)] != indices[static_cast<std::size_t>(b)]) {
      return indices[static_cast<std::size_t>(a)] > indices[static_cast<std::size_t>(b)];
    }
    return ids[static_cast<std::size_t>(a)] < ids[static_cast<std::size_t>(b)];
  };
  if (k < 0) k = 0;
  const int take = std::min(k, n);
  std::partial_sort(order.begin(), order.begin() + take, order.end(), better);
  order.resize(static_cast<std::size_t>(take));
  return order;
}

std::vector<int> plan_step(const std::vector<PresentArm>& present,
                           const Cohort& cohort, PolicyId policy, int budget,
                           const IndexTables* tables, double beta, double tol,
                           std::uint64_t policy_stream, int t, int* failures) {
  if (policy == PolicyId::NoIntervention || budget <= 0) return {};

  std::vector<double> indices(present.size());
  std::vector<int> ids(present.size());
  for (std::size_t i = 0; i < present.size(); ++i) {
    const PresentArm& arm = present[i];
    ids[i] = arm.id;
    const TransitionKernel& kernel = cohort.rows[static_cast<std::size_t>(arm.row)].kernel;
    double value = 0.0;
    try {
      switch (policy) {
        case PolicyId::Random:
          value = u01(mix(policy_stream, static_cast<std::uint64_t>(arm.id),
                          static_cast<std::uint64_t>(t)));
          break;
        case PolicyId::Myopic:
          value = arm.horizon_left == 0 ? 0.0 : myopic_index(kernel, arm.belief);
          break;
        case PolicyId::ThresholdWhittle:
          value = tables->row(arm.row).lookup(arm.node);
          break;
        case PolicyId::Linear: {
          const double delta_b = myopic_index(kernel, arm.belief);
          value = linear_index(arm.horizon_left, delta_b, tables->row(arm.row).lookup(arm.node));
          break;
        }
        case PolicyId::Logistic: {
          const double delta_b = myopic_index(kernel, arm.belief);
          value = logistic_index(arm.horizon_left, delta_b, tables->row(arm.row).lookup(arm.node));
          break;
        }
        case PolicyId::Exact:
          value = whittle_index_finite(kernel, arm.belief, arm.horizon_left, beta, tol);
          break;
        case PolicyId::NoIntervention:
          break;
      }
    } catch (const std::exception&) {
      value = -std::numeric_limits<double>::infinity();
      if (failures) ++(*failures);
    }
    indices[i] = value;
  }
  return select_top_k(indices, ids, budget);
}

namespace {

struct LiveArm {
  Arm arm;
  int row = 0;  // cohort row backing arm.kernel
};

double node_value(const TransitionKernel& k, ChainNode n) {
  double b = anchor_value(k, n.anchor);
  for (int i = 0; i < n.age; ++i) b = k.passive_step(b);
  return b;
}

}  // namespace

SimulationResult run_trial(const SimulationConfig& cfg, const Cohort& cohort,
                           PolicyId policy, const IndexTables* tables,
                           int trial_index) {
  if (cfg.horizon < 1) throw std::invalid_argument("run_trial: horizon must be >= 1");
  if (cohort.empty()) throw std::invalid_argument("run_trial: empty cohort");
  const bool needs_tables = cfg.budget > 0 &&
                            (policy == PolicyId::ThresholdWhittle ||
                             policy == PolicyId::Linear || policy == PolicyId::Logistic);
  if (needs_tables && tables == nullptr) {
    throw std::invalid_argument("run_trial: policy requires precomputed index tables");
  }

  const std::uint64_t trial_seed =
      mix(cfg.master_seed, kTrialStream, static_cast<std::uint64_t>(trial_index));
  const std::uint64_t arrivals_seed = mix(trial_seed, kArrivalStream);
  const std::uint64_t init_seed = mix(trial_seed, kInitialStateStream);
  const std::uint64_t trans_seed = mix(trial_seed, kTransitionStream);
  const std::uint64_t policy_seed = mix(trial_seed, kPolicyStream);
  const std::uint64_t assign_seed = mix(trial_seed, kCohortAssignStream);

  std::vector<ScheduledArm> schedule =
      generate_schedule(cfg.arrivals, cfg.horizon, cfg.lifetime, arrivals_seed);

  SimulationResult result;
  result.trial_seed = trial_seed;
  const std::size_t horizon = static_cast<std::size_t>(cfg.horizon);
  result.rewards.assign(horizon, 0.0);
  result.population.assign(horizon, 0);
  result.arrivals.assign(horizon, 0);
  result.departures.assign(horizon, 0);
  result.pulls.assign(horizon, 0);
  result.plan_seconds.assign(horizon, 0.0);

  std::vector<LiveArm> live;
  std::vector<PresentArm> present;
  std::vector<char> pulled;
  std::size_t next_arrival = 0;

  using clock = std::chrono::steady_clock;

  for (int t = 1; t <= cfg.horizon; ++t) {
    const std::size_t ti = static_cast<std::size_t>(t) - 1;

    // Arrivals join with a known initial state; belief starts collapsed on it.
    while (next_arrival < schedule.size() &&
           schedule[next_arrival].arrival_time == t) {
      const int id = static_cast<int>(next_arrival);
      LiveArm live_arm;
      live_arm.row =
          static_cast<int>(mix(assign_seed, static_cast<std::uint64_t>(id)) % cohort.size());
      Arm& arm = live_arm.arm;
      arm.id = id;
      arm.kernel = cohort.rows[static_cast<std::size_t>(live_arm.row)].kernel;
      arm.arrival_time = t;
      arm.lifetime = cfg.lifetime_from_cohort
                         ? cohort.rows[static_cast<std::size_t>(live_arm.row)].lifetime
                         : schedule[next_arrival].lifetime;
      arm.hidden_state = u01(mix(init_seed, static_cast<std::uint64_t>(id))) < cfg.p_start ? 1 : 0;
      arm.belief = ChainNode{arm.hidden_state ? Anchor::Obs1 : Anchor::Obs0, 0};
      live.push_back(live_arm);
      result.arrivals[ti] += 1;
      ++next_arrival;
    }

    result.population[ti] = static_cast<int>(live.size());

    present.clear();
    present.reserve(live.size());
    for (const LiveArm& live_arm : live) {
      const Arm& arm = live_arm.arm;
      present.push_back(PresentArm{arm.id, live_arm.row, arm.belief,
                                   node_value(arm.kernel, arm.belief),
                                   arm.index_horizon(t)});
    }

    const auto plan_begin = clock::now();
    const std::vector<int> picked =
        plan_step(present, cohort, policy, cfg.budget, tables, cfg.beta, cfg.tol,
                  policy_seed, t, &result.policy_failures);
    const auto plan_end = clock::now();
    result.plan_seconds[ti] =
        std::chrono::duration<double>(plan_end - plan_begin).count();
    result.pulls[ti] = static_cast<int>(picked.size());

    pulled.assign(live.size(), 0);
    for (int pos : picked) pulled[static_cast<std::size_t>(pos)] = 1;

    // Reward accrues from every present arm's true state, then pulls collapse
    // beliefs and everything transitions under the chosen action.
    double reward = 0.0;
    for (const LiveArm& live_arm : live) reward += live_arm.arm.hidden_state;
    result.rewards[ti] = reward;

    for (std::size_t i = 0; i < live.size(); ++i) {
      Arm& arm = live[i].arm;
      const bool active = pulled[i] != 0;
      const int observed = arm.hidden_state;  // pull reveals the pre-transition state
      const double draw = u01(mix(trans_seed, static_cast<std::uint64_t>(arm.id),
                                  static_cast<std::uint64_t>(t)));
      arm.hidden_state = evolve_hidden_state(arm.kernel, arm.hidden_state, active, draw);
      if (active) {
        arm.belief = ChainNode{observed ? Anchor::Act1 : Anchor::Act0, 0};
      } else {
        arm.belief.age += 1;
      }
    }

    // Depart after the reward at the last present step (arrival + L - 1).
    std::size_t kept = 0;
    int departed = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (live[i].arm.present(t + 1)) {
        live[kept++] = live[i];
      } else {
        ++departed;
      }
    }
    live.resize(kept);
    if (t < cfg.horizon) result.departures[ti + 1] = departed;
  }

  result.total_reward =
      std::accumulate(result.rewards.begin(), result.rewards.end(), 0.0);
  return result;
}

double intervention_benefit(double r_alg, double r_none, double r_ref) {
  if (r_ref == r_none) {
    throw UndefinedBenefitError("intervention benefit undefined: reference equals do-nothing");
  }
  return 100.0 * (r_alg - r_none) / (r_ref - r_none);
}

TrialSet run_trials(const SimulationConfig& cfg, const Cohort& cohort,
                    const std::vector<PolicyId>& policies, int jobs) {
  TrialSet set;
  set.policies = policies;
  set.trials = cfg.trials;
  set.by_policy.assign(policies.size(), std::vector<SimulationResult>(
                                            static_cast<std::size_t>(cfg.trials)));

  const bool needs_tables =
      std::any_of(policies.begin(), policies.end(), [](PolicyId p) {
        return p == PolicyId::ThresholdWhittle || p == PolicyId::Linear ||
               p == PolicyId::Logistic;
      });
  int age_cap = cfg.lifetime;
  if (cfg.lifetime_from_cohort) {
    for (const auto& row : cohort.rows) age_cap = std::max(age_cap, row.lifetime);
  }
  std::optional<IndexTables> tables;
  if (needs_tables) {
    tables = IndexTables::build(cohort, age_cap, cfg.beta, cfg.tol);
  }
  const IndexTables* tables_ptr = tables ? &*tables : nullptr;

  const long total = static_cast<long>(policies.size()) * cfg.trials;
  std::atomic<long> cursor{0};
  const auto worker = [&]() {
    while (true) {
      const long task = cursor.fetch_add(1);
      if (task >= total) break;
      const std::size_t p = static_cast<std::size_t>(task / cfg.trials);
      const int trial = static_cast<int>(task % cfg.trials);
      set.by_policy[p][static_cast<std::size_t>(trial)] =
          run_trial(cfg, cohort, policies[p], tables_ptr, trial);
    }
  };

  jobs = std::clamp(jobs, 1, static_cast<int>(total));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return set;
}

std::vector<PolicySummary> summarize(const TrialSet& set) {
  const auto find = [&](PolicyId id) -> const std::vector<SimulationResult>* {
    for (std::size_t i = 0; i < set.policies.size(); ++i) {
      if (set.policies[i] == id) return &set.by_policy[i];
    }
    return nullptr;
  };
  const auto* none = find(PolicyId::NoIntervention);
  const auto* exact = find(PolicyId::Exact);
  if (none == nullptr || exact == nullptr) {
    throw std::invalid_argument("summarize: needs no_intervention and exact baselines");
  }

  const int n = set.trials;
  double gap = 0.0;
  for (int i = 0; i < n; ++i) {
    gap += (*exact)[static_cast<std::size_t>(i)].total_reward -
           (*none)[static_cast<std::size_t>(i)].total_reward;
  }
  gap /= n;
  if (gap == 0.0) {
    throw UndefinedBenefitError("intervention benefit undefined: reference equals do-nothing");
  }

  std::vector<PolicySummary> out;
  out.reserve(set.policies.size());
  for (std::size_t p = 0; p < set.policies.size(); ++p) {
    PolicySummary s;
    s.policy = set.policies[p];
    s.trial_benefits.resize(static_cast<std::size_t>(n));
    double steps = 0.0, plan = 0.0;
    for (int i = 0; i < n; ++i) {
      const SimulationResult& r = set.by_policy[p][static_cast<std::size_t>(i)];
      s.mean_reward += r.total_reward;
      const double excess =
          r.total_reward - (*none)[static_cast<std::size_t>(i)].total_reward;
      s.trial_benefits[static_cast<std::size_t>(i)] = 100.0 * excess / gap;
      for (double sec : r.plan_seconds) plan += sec;
      steps += static_cast<double>(r.plan_seconds.size());
    }
    s.mean_reward /= n;
    s.mean_benefit = std::accumulate(s.trial_benefits.begin(), s.trial_benefits.end(), 0.0) / n;
    double var = 0.0;
    for (double b : s.trial_benefits) var += (b - s.mean_benefit) * (b - s.mean_benefit);
    s.se_benefit = n > 1 ? std::sqrt(var / (n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
    s.mean_plan_seconds = steps > 0 ? plan / steps : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace srmab
