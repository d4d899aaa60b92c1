#pragma once

#include <cstdint>
#include <vector>

#include "srmab/sim.hpp"

namespace srmab {

struct BenchSetting {
  double arrival_rate = 0.0;
  int lifetime = 0;
};

struct BenchConfig {
  std::vector<double> arrival_rates;  // grid at fixed lifetime
  std::vector<int> lifetimes;         // grid at fixed arrival rate
  double fixed_rate = 20.0;
  int fixed_lifetime = 5;
  double budget_percent = 10.0;  // k = pct% of X*L
  int trials = 5;
  int cohort_size = 40;
  double beta = 1.0;
  double tol = kDefaultSubsidyTol;
  std::uint64_t seed = 1;
  std::vector<PolicyId> policies;
};

struct BenchPoint {
  double arrival_rate = 0.0;
  int lifetime = 0;
  PolicyId policy{};
  double mean_period_seconds = 0.0;  // steady-state steps only
  double p50_seconds = 0.0;
  double p90_seconds = 0.0;
  double speedup_vs_exact = 0.0;  // 0 when Exact absent from the point
};

struct BenchResult {
  std::vector<BenchPoint> rate_sweep;
  std::vector<BenchPoint> lifetime_sweep;
};

// Poisson stream, T = 3L with timing collected past the population ramp.
// Runs sequentially: wall-clock comparisons need an unloaded machine.
BenchResult run_bench(const BenchConfig& cfg);

double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace srmab
