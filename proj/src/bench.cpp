#include "srmab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srmab {

namespace {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = p * (static_cast<double>(values.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::vector<BenchPoint> bench_setting(const BenchConfig& cfg, double rate,
                                      int lifetime) {
  SimulationConfig sim;
  sim.horizon = 3 * lifetime;
  sim.budget = std::max(1, static_cast<int>(std::lround(cfg.budget_percent / 100.0 * rate * lifetime)));
  sim.arrivals = ArrivalProcess{ArrivalProcess::Kind::Poisson, rate, 0};
  sim.lifetime = lifetime;
  sim.beta = cfg.beta;
  sim.tol = cfg.tol;
  sim.master_seed = mix(cfg.seed, static_cast<std::uint64_t>(lifetime),
                        static_cast<std::uint64_t>(std::llround(rate * 1000)));
  sim.trials = cfg.trials;

  const Cohort cohort = sample_uniform_cohort(cfg.cohort_size, lifetime, sim.master_seed);
  // Timing comparisons need one task at a time on the core.
  const TrialSet set = run_trials(sim, cohort, cfg.policies, 1);

  std::vector<BenchPoint> points;
  double exact_mean = 0.0;
  for (std::size_t p = 0; p < set.policies.size(); ++p) {
    BenchPoint point;
    point.arrival_rate = rate;
    point.lifetime = lifetime;
    point.policy = set.policies[p];
    // Skip the ramp: population is in steady state from step L+1 on.
    std::vector<double> samples;
    for (const SimulationResult& r : set.by_policy[p]) {
      for (std::size_t t = static_cast<std::size_t>(lifetime); t < r.plan_seconds.size(); ++t) {
        samples.push_back(r.plan_seconds[t]);
      }
    }
    double sum = 0.0;
    for (double s : samples) sum += s;
    point.mean_period_seconds = samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
    point.p50_seconds = percentile(samples, 0.50);
    point.p90_seconds = percentile(samples, 0.90);
    if (point.policy == PolicyId::Exact) exact_mean = point.mean_period_seconds;
    points.push_back(point);
  }
  for (BenchPoint& point : points) {
    if (exact_mean > 0.0 && point.mean_period_seconds > 0.0) {
      point.speedup_vs_exact = exact_mean / point.mean_period_seconds;
    }
  }
  return points;
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  if (cfg.policies.empty()) throw std::invalid_argument("run_bench: no policies");
  if (cfg.trials < 1) throw std::invalid_argument("run_bench: trials must be >= 1");

  BenchResult result;
  for (double rate : cfg.arrival_rates) {
    const auto points = bench_setting(cfg, rate, cfg.fixed_lifetime);
    result.rate_sweep.insert(result.rate_sweep.end(), points.begin(), points.end());
  }
  for (int lifetime : cfg.lifetimes) {
    const auto points = bench_setting(cfg, cfg.fixed_rate, lifetime);
    result.lifetime_sweep.insert(result.lifetime_sweep.end(), points.begin(), points.end());
  }
  return result;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_slope: need two matched samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: degenerate x");
  return sxy / sxx;
}

}  // namespace srmab
