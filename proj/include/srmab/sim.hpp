#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srmab/arrivals.hpp"
#include "srmab/belief.hpp"
#include "srmab/cohort.hpp"
#include "srmab/index_table.hpp"

namespace srmab {

enum class PolicyId {
  NoIntervention,
  Random,
  Myopic,
  ThresholdWhittle,
  Linear,
  Logistic,
  Exact,
};

std::string to_string(PolicyId id);
std::optional<PolicyId> parse_policy(std::string_view name);

struct SimulationConfig {
  int horizon = 1;   // T
  int budget = 0;    // k pulls per step
  ArrivalProcess arrivals{};
  int lifetime = 1;
  bool lifetime_from_cohort = false;
  double beta = 1.0;
  double p_start = 0.0;  // P(initial hidden state is good)
  double tol = kDefaultSubsidyTol;
  std::uint64_t master_seed = 0;
  int trials = 1;
};

struct SimulationResult {
  std::uint64_t trial_seed = 0;
  std::vector<double> rewards;      // R_t
  std::vector<int> population;      // N(t)
  std::vector<int> arrivals;        // X(t)
  std::vector<int> departures;      // Y(t), counted at the step the arm is gone
  std::vector<int> pulls;           // |action set| per step
  std::vector<double> plan_seconds; // planning phase only
  double total_reward = 0.0;
  int policy_failures = 0;
};

// Immutable per-cohort-row infinite-horizon index tables, built once before
// any trial runs and shared read-only (Algorithm precompute, untimed).
class IndexTables {
 public:
  static IndexTables build(const Cohort& cohort, int age_cap, double beta,
                           double tol, int max_horizon = kDefaultMaxHorizon);
  const IndexTable& row(int i) const { return tables_->at(static_cast<std::size_t>(i)); }

 private:
  std::shared_ptr<const std::vector<IndexTable>> tables_;
};

// One present arm as the planner sees it: no hidden state.
struct PresentArm {
  int id = 0;
  int row = 0;          // cohort row
  ChainNode node{};
  double belief = 0.0;
  int horizon_left = 0;  // future present steps after this one; 0 on the last day
};

// Largest-first, ties to the lower id; at most k picks. Returns positions
// into the input.
std::vector<int> select_top_k(const std::vector<double>& indices,
                              const std::vector<int>& ids, int k);

// Computes the policy's index for every present arm and selects at most k.
// A per-arm computation failure scores that arm -inf and bumps *failures.
std::vector<int> plan_step(const std::vector<PresentArm>& present,
                           const Cohort& cohort, PolicyId policy, int budget,
                           const IndexTables* tables, double beta, double tol,
                           std::uint64_t policy_stream, int t, int* failures);

SimulationResult run_trial(const SimulationConfig& cfg, const Cohort& cohort,
                           PolicyId policy, const IndexTables* tables,
                           int trial_index);

// 100 * (alg - none) / (ref - none); may exceed 100.
struct UndefinedBenefitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
double intervention_benefit(double r_alg, double r_none, double r_ref);

struct TrialSet {
  std::vector<PolicyId> policies;
  std::vector<std::vector<SimulationResult>> by_policy;  // [policy][trial]
  int trials = 0;
};

// Same worlds for every policy; trials fan out over `jobs` threads with
// results slotted by (policy, trial), so output is order-independent.
TrialSet run_trials(const SimulationConfig& cfg, const Cohort& cohort,
                    const std::vector<PolicyId>& policies, int jobs);

struct PolicySummary {
  PolicyId policy{};
  double mean_reward = 0.0;
  double mean_benefit = 0.0;
  double se_benefit = 0.0;
  double mean_plan_seconds = 0.0;         // per period
  std::vector<double> trial_benefits;
};

// Benefits normalized so NoIntervention = 0 and Exact = 100 exactly. Both
// baselines must be present in the set.
std::vector<PolicySummary> summarize(const TrialSet& set);

}  // namespace srmab
