#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srmab/bench.hpp"
#include "srmab/cohort.hpp"
#include "srmab/interpolate.hpp"
#include "srmab/sim.hpp"
#include "srmab/whittle.hpp"

using json = nlohmann::ordered_json;
using namespace srmab;

namespace {

// exit 0 success, 1 validation/config error, 2 runtime error
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(s);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  for (const auto& field : split(csv, ',')) {
    try {
      grid.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ConfigError("bad grid value: " + field);
    }
  }
  if (grid.empty()) throw ConfigError("empty grid");
  return grid;
}

std::vector<PolicyId> parse_policies(const std::string& csv, bool add_baselines) {
  std::vector<PolicyId> policies;
  for (const auto& name : split(csv, ',')) {
    const auto id = parse_policy(name);
    if (!id) throw ConfigError("unknown policy: " + name);
    if (std::find(policies.begin(), policies.end(), *id) == policies.end()) {
      policies.push_back(*id);
    }
  }
  if (add_baselines) {
    for (PolicyId required : {PolicyId::NoIntervention, PolicyId::Exact}) {
      if (std::find(policies.begin(), policies.end(), required) == policies.end()) {
        policies.insert(policies.begin(), required);
      }
    }
  }
  if (policies.empty()) throw ConfigError("no policies selected");
  return policies;
}

// uniform:SIZE | threshold:F:SIZE | archetype:F_NONREC:F_SELF:SIZE | file:PATH
struct CohortSpec {
  enum class Kind { Uniform, ThresholdFraction, ArchetypeMix, File } kind = Kind::Uniform;
  int size = 50;
  double f1 = 0.0, f2 = 0.0;
  std::string path;

  static CohortSpec parse(const std::string& text) {
    CohortSpec spec;
    const auto parts = split(text, ':');
    try {
      if (parts[0] == "uniform" && parts.size() == 2) {
        spec.kind = Kind::Uniform;
        spec.size = std::stoi(parts[1]);
      } else if (parts[0] == "threshold" && parts.size() == 3) {
        spec.kind = Kind::ThresholdFraction;
        spec.f1 = std::stod(parts[1]);
        spec.size = std::stoi(parts[2]);
      } else if (parts[0] == "archetype" && parts.size() == 4) {
        spec.kind = Kind::ArchetypeMix;
        spec.f1 = std::stod(parts[1]);
        spec.f2 = std::stod(parts[2]);
        spec.size = std::stoi(parts[3]);
      } else if (parts[0] == "file" && parts.size() >= 2) {
        spec.kind = Kind::File;
        spec.path = text.substr(5);
      } else if (parts.size() == 1 && std::filesystem::exists(parts[0])) {
        spec.kind = Kind::File;
        spec.path = parts[0];
      } else {
        throw ConfigError("bad cohort spec: " + text);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bad cohort spec: " + text);
    }
    if (spec.kind != Kind::File && spec.size < 1) {
      throw ConfigError("cohort size must be >= 1");
    }
    return spec;
  }

  Cohort materialize(int lifetime, std::uint64_t seed) const {
    switch (kind) {
      case Kind::Uniform:
        return sample_uniform_cohort(size, lifetime, seed);
      case Kind::ThresholdFraction:
        return sample_threshold_fraction_cohort(size, f1, lifetime, seed);
      case Kind::ArchetypeMix:
        return sample_archetype_mix_cohort(size, f1, f2, lifetime, seed);
      case Kind::File: {
        const CohortLoadResult result = load_cohort_csv(path);
        if (!result.ok()) {
          std::string message = "cohort file " + path + " invalid:";
          for (const auto& e : result.errors) {
            message += "\n  line " + std::to_string(e.line) + ": " + e.message;
          }
          throw ConfigError(message);
        }
        return result.cohort;
      }
    }
    throw ConfigError("unreachable cohort kind");
  }
};

ArrivalProcess::Kind parse_arrival_kind(const std::string& name) {
  if (name == "synchronous") return ArrivalProcess::Kind::Synchronous;
  if (name == "deterministic") return ArrivalProcess::Kind::Deterministic;
  if (name == "poisson") return ArrivalProcess::Kind::Poisson;
  throw ConfigError("unknown arrival kind: " + name);
}

std::string arrival_name(ArrivalProcess::Kind kind) {
  switch (kind) {
    case ArrivalProcess::Kind::Synchronous: return "synchronous";
    case ArrivalProcess::Kind::Deterministic: return "deterministic";
    case ArrivalProcess::Kind::Poisson: return "poisson";
  }
  return "?";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string trim(std::string s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

// Flat `key = value` file, `#` comments. Keys are the command's long option
// names without dashes; values given on the command line win.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* option = cmd->get_option_no_throw("--" + key);
    if (option == nullptr || key == "config") {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key " + key);
    }
    if (option->count() > 0) continue;
    try {
      option->add_result(value);
      option->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad value for " + key +
                        " (" + e.what() + ")");
    }
  }
}

// ---------------------------------------------------------------------------
// simulate / sweep share these option bundles

struct SimOpts {
  std::uint64_t seed = 1;
  int trials = 50;
  int jobs = 1;
  std::string out = "results";
  double beta = 1.0;
  double tol = kDefaultSubsidyTol;
  int horizon = 40;
  int budget = 6;
  std::string arrival = "deterministic";
  double rate = 10.0;
  int count = 0;
  int lifetime = 5;
  bool lifetime_from_cohort = false;
  double p_start = 0.0;
  std::string cohort = "uniform:50";
  std::uint64_t cohort_seed = 7;
  std::string policies = "exact,linear,logistic,tw,myopic,random";
  bool timings = false;
  std::string config;
};

void add_sim_options(CLI::App* cmd, SimOpts& o) {
  cmd->add_option("--seed", o.seed, "master seed; all randomness derives from it");
  cmd->add_option("--trials", o.trials, "independent trials")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "worker threads over trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_option("--beta", o.beta, "discount factor");
  cmd->add_option("--tol", o.tol, "subsidy search tolerance");
  cmd->add_option("--horizon", o.horizon, "simulation length T")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", o.budget, "pulls per step k")->check(CLI::NonNegativeNumber);
  cmd->add_option("--arrival", o.arrival, "synchronous|deterministic|poisson");
  cmd->add_option("--rate", o.rate, "mean arrivals per step (deterministic/poisson)");
  cmd->add_option("--count", o.count, "cohort size N (synchronous)");
  cmd->add_option("--lifetime", o.lifetime, "steps each arm stays")->check(CLI::PositiveNumber);
  cmd->add_flag("--lifetime-from-cohort", o.lifetime_from_cohort,
                "take lifetimes from the cohort rows");
  cmd->add_option("--p-start", o.p_start, "P(arm enters in the good state)");
  cmd->add_option("--cohort", o.cohort,
                  "uniform:N | threshold:F:N | archetype:FN:FS:N | file:PATH");
  cmd->add_option("--cohort-seed", o.cohort_seed, "seed for generated cohorts");
  cmd->add_option("--policies", o.policies, "comma list; baselines are always added");
  cmd->add_option("--config", o.config, "key=value file; command-line flags override")
      ->configurable(false);
}

SimulationConfig to_sim_config(const SimOpts& o) {
  SimulationConfig cfg;
  cfg.horizon = o.horizon;
  cfg.budget = o.budget;
  cfg.arrivals.kind = parse_arrival_kind(o.arrival);
  cfg.arrivals.rate = o.rate;
  cfg.arrivals.count = o.count;
  if (cfg.arrivals.kind == ArrivalProcess::Kind::Synchronous && o.count < 1) {
    throw ConfigError("synchronous arrivals need --count >= 1");
  }
  cfg.lifetime = o.lifetime;
  cfg.lifetime_from_cohort = o.lifetime_from_cohort;
  cfg.beta = o.beta;
  cfg.p_start = o.p_start;
  cfg.tol = o.tol;
  cfg.master_seed = o.seed;
  cfg.trials = o.trials;

  const double expected_population =
      cfg.arrivals.kind == ArrivalProcess::Kind::Synchronous
          ? static_cast<double>(cfg.arrivals.count)
          : cfg.arrivals.rate * cfg.lifetime;
  if (cfg.budget > expected_population) {
    std::cerr << "warning: budget k=" << cfg.budget
              << " exceeds the expected population " << expected_population
              << "; every present arm will be pulled\n";
  }
  return cfg;
}

json policy_block(const PolicySummary& s, bool timings) {
  json block;
  block["policy"] = to_string(s.policy);
  block["mean_reward"] = s.mean_reward;
  block["mean_benefit"] = s.mean_benefit;
  block["se_benefit"] = s.se_benefit;
  if (timings) block["mean_period_plan_seconds"] = s.mean_plan_seconds;
  return block;
}

std::string trials_csv(const TrialSet& set, const std::vector<PolicySummary>& summaries) {
  std::string csv = "policy,trial,seed,total_reward,benefit\n";
  for (std::size_t p = 0; p < set.policies.size(); ++p) {
    for (int i = 0; i < set.trials; ++i) {
      const auto& r = set.by_policy[p][static_cast<std::size_t>(i)];
      csv += to_string(set.policies[p]);
      csv += ',' + std::to_string(i);
      csv += ',' + std::to_string(r.trial_seed);
      csv += ',' + fmt(r.total_reward);
      csv += ',' + fmt(summaries[p].trial_benefits[static_cast<std::size_t>(i)]);
      csv += '\n';
    }
  }
  return csv;
}

int cmd_validate(const std::string& path) {
  const CohortLoadResult result = load_cohort_csv(path);
  for (const auto& e : result.errors) {
    std::cerr << path << ":" << e.line << ": " << e.message << "\n";
  }
  if (!result.ok()) return 1;
  std::cout << "ok: " << result.cohort.size() << " arms\n";
  return 0;
}

int cmd_index(const std::string& kernel_csv, const std::string& beliefs_csv,
              int hmax, double beta, double tol, const std::string& out) {
  const auto entries = parse_grid(kernel_csv);
  if (entries.size() != 4) throw ConfigError("--kernel needs p01_p,p11_p,p01_a,p11_a");
  const TransitionKernel kernel{entries[0], entries[1], entries[2], entries[3]};
  const KernelValidation validation = validate_kernel(kernel);
  if (!validation.ok()) {
    std::string message = "invalid kernel:";
    for (const auto& v : validation.violations) message += " " + v;
    throw ConfigError(message);
  }

  std::string csv = "belief,h,exact,linear,logistic,myopic,tw\n";
  for (double b : parse_grid(beliefs_csv)) {
    if (b < 0.0 || b > 1.0) throw ConfigError("belief out of [0,1]: " + fmt(b));
    const double delta_b = myopic_index(kernel, b);
    const double w_inf = whittle_index_infinite(kernel, b, beta, kDefaultMaxHorizon, tol);
    for (int h = 0; h <= hmax; ++h) {
      const double exact = whittle_index_finite(kernel, b, h, beta, tol);
      csv += fmt(b);
      csv += ',' + std::to_string(h);
      csv += ',' + fmt(exact);
      csv += ',' + fmt(linear_index(h, delta_b, w_inf));
      csv += ',' + fmt(logistic_index(h, delta_b, w_inf));
      csv += ',' + fmt(h == 0 ? 0.0 : delta_b);
      csv += ',' + fmt(w_inf);
      csv += '\n';
    }
  }
  if (out == "-") {
    std::cout << csv;
  } else {
    write_file(out, csv);
  }
  return 0;
}

int cmd_simulate(const SimOpts& opts) {
  const SimulationConfig cfg = to_sim_config(opts);
  const CohortSpec cohort_spec = CohortSpec::parse(opts.cohort);
  const Cohort cohort = cohort_spec.materialize(opts.lifetime, opts.cohort_seed);
  const std::vector<PolicyId> policies = parse_policies(opts.policies, true);

  const TrialSet set = run_trials(cfg, cohort, policies, opts.jobs);
  const std::vector<PolicySummary> summaries = summarize(set);

  json summary;
  summary["command"] = "simulate";
  summary["seed"] = opts.seed;
  summary["trials"] = opts.trials;
  summary["horizon"] = opts.horizon;
  summary["budget"] = opts.budget;
  summary["beta"] = opts.beta;
  summary["arrival"] = {{"kind", arrival_name(cfg.arrivals.kind)},
                        {"rate", cfg.arrivals.rate},
                        {"count", cfg.arrivals.count}};
  summary["lifetime"] = opts.lifetime;
  summary["p_start"] = opts.p_start;
  summary["cohort"] = opts.cohort;
  summary["cohort_seed"] = opts.cohort_seed;
  summary["policies"] = json::array();
  for (const auto& s : summaries) summary["policies"].push_back(policy_block(s, opts.timings));

  write_file(opts.out + ".summary.json", summary.dump(2) + "\n");
  write_file(opts.out + ".trials.csv", trials_csv(set, summaries));

  for (const auto& s : summaries) {
    std::cerr << to_string(s.policy) << ": benefit " << s.mean_benefit
              << " (se " << s.se_benefit << ")\n";
  }
  return 0;
}

int cmd_sweep(const SimOpts& opts, const std::string& sweep_var,
              const std::string& grid_csv, double keep_product) {
  const std::vector<double> grid = parse_grid(grid_csv);
  const std::vector<PolicyId> policies = parse_policies(opts.policies, true);
  const CohortSpec base_spec = CohortSpec::parse(opts.cohort);

  std::string csv = "sweep,value,policy,trial,seed,total_reward,benefit\n";
  json summary;
  summary["command"] = "sweep";
  summary["sweep"] = sweep_var;
  summary["seed"] = opts.seed;
  summary["trials"] = opts.trials;
  summary["keep_product"] = keep_product;
  summary["points"] = json::array();

  for (std::size_t point = 0; point < grid.size(); ++point) {
    const double value = grid[point];
    json point_block;
    point_block["value"] = value;
    try {
      SimOpts local = opts;
      local.seed = mix(opts.seed, 0x5EED, point);
      CohortSpec spec = base_spec;

      if (sweep_var == "arrival_rate") {
        local.rate = value;
      } else if (sweep_var == "lifetime") {
        local.lifetime = static_cast<int>(std::lround(value));
        if (keep_product > 0.0) {
          local.rate = std::floor(keep_product / local.lifetime + 0.5);
        }
      } else if (sweep_var == "budget") {
        local.budget = static_cast<int>(std::lround(value));
      } else if (sweep_var == "threshold_fraction") {
        spec.kind = CohortSpec::Kind::ThresholdFraction;
        spec.f1 = value;
      } else if (sweep_var == "nonrecoverable_fraction") {
        spec.kind = CohortSpec::Kind::ArchetypeMix;
        spec.f1 = value;
        spec.f2 = 0.0;
      } else {
        throw ConfigError("unknown sweep variable: " + sweep_var);
      }

      const SimulationConfig cfg = to_sim_config(local);
      const Cohort cohort = spec.materialize(local.lifetime, mix(opts.cohort_seed, point));
      const TrialSet set = run_trials(cfg, cohort, policies, opts.jobs);
      const std::vector<PolicySummary> summaries = summarize(set);

      for (std::size_t p = 0; p < set.policies.size(); ++p) {
        for (int i = 0; i < set.trials; ++i) {
          const auto& r = set.by_policy[p][static_cast<std::size_t>(i)];
          csv += sweep_var;
          csv += ',' + fmt(value);
          csv += ',' + to_string(set.policies[p]);
          csv += ',' + std::to_string(i);
          csv += ',' + std::to_string(r.trial_seed);
          csv += ',' + fmt(r.total_reward);
          csv += ',' + fmt(summaries[p].trial_benefits[static_cast<std::size_t>(i)]);
          csv += '\n';
        }
      }
      point_block["policies"] = json::array();
      for (const auto& s : summaries) {
        point_block["policies"].push_back(policy_block(s, opts.timings));
      }
    } catch (const ConfigError&) {
      throw;  // configuration problems abort the whole sweep
    } catch (const std::exception& e) {
      // a failing grid point is recorded and the sweep continues
      point_block["error"] = e.what();
      std::cerr << "sweep point " << value << " failed: " << e.what() << "\n";
    }
    summary["points"].push_back(point_block);
  }

  write_file(opts.out + ".sweep.csv", csv);
  write_file(opts.out + ".summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_bench(const std::string& rates_csv, const std::string& lifetimes_csv,
              double fixed_rate, int fixed_lifetime, double budget_percent,
              int trials, int cohort_size, std::uint64_t seed, double beta,
              double tol, const std::string& policies_csv, const std::string& out) {
  BenchConfig cfg;
  cfg.arrival_rates = parse_grid(rates_csv);
  for (double l : parse_grid(lifetimes_csv)) {
    cfg.lifetimes.push_back(static_cast<int>(std::lround(l)));
  }
  cfg.fixed_rate = fixed_rate;
  cfg.fixed_lifetime = fixed_lifetime;
  cfg.budget_percent = budget_percent;
  cfg.trials = trials;
  cfg.cohort_size = cohort_size;
  cfg.seed = seed;
  cfg.beta = beta;
  cfg.tol = tol;
  cfg.policies = parse_policies(policies_csv, false);
  if (std::find(cfg.policies.begin(), cfg.policies.end(), PolicyId::Exact) ==
      cfg.policies.end()) {
    throw ConfigError("bench needs the exact policy as the speedup reference");
  }

  const BenchResult result = run_bench(cfg);

  std::string csv =
      "sweep,x_bar,lifetime,policy,mean_period_plan_seconds,p50_seconds,p90_seconds,"
      "speedup_vs_exact\n";
  const auto append = [&csv](const char* tag, const BenchPoint& p) {
    csv += tag;
    csv += ',' + fmt(p.arrival_rate);
    csv += ',' + std::to_string(p.lifetime);
    csv += ',' + to_string(p.policy);
    csv += ',' + fmt(p.mean_period_seconds);
    csv += ',' + fmt(p.p50_seconds);
    csv += ',' + fmt(p.p90_seconds);
    csv += ',' + fmt(p.speedup_vs_exact);
    csv += '\n';
  };
  for (const auto& p : result.rate_sweep) append("rate", p);
  for (const auto& p : result.lifetime_sweep) append("lifetime", p);

  json summary;
  summary["command"] = "bench";
  summary["seed"] = seed;
  summary["trials"] = trials;
  summary["budget_percent"] = budget_percent;
  summary["speedups"] = json::array();
  for (const auto& p : result.rate_sweep) {
    if (p.policy == PolicyId::Exact) continue;
    summary["speedups"].push_back({{"x_bar", p.arrival_rate},
                                   {"lifetime", p.lifetime},
                                   {"policy", to_string(p.policy)},
                                   {"speedup_vs_exact", p.speedup_vs_exact}});
  }
  // planning-time growth in the lifetime: exact should rise much faster
  summary["lifetime_slopes"] = json::object();
  for (PolicyId policy : cfg.policies) {
    std::vector<double> xs, ys;
    for (const auto& p : result.lifetime_sweep) {
      if (p.policy != policy) continue;
      xs.push_back(static_cast<double>(p.lifetime));
      ys.push_back(p.mean_period_seconds);
    }
    if (xs.size() >= 2) {
      summary["lifetime_slopes"][to_string(policy)] = ols_slope(xs, ys);
    }
  }

  write_file(out + ".bench.csv", csv);
  write_file(out + ".bench.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming restless-bandit index policies: simulation and benchmarks"};
  app.require_subcommand(1);

  // validate
  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "check a cohort csv");
  validate->add_option("cohort", validate_path, "cohort csv path")->required();

  // index
  std::string kernel_csv, beliefs_csv = "0,1", index_out = "-";
  int hmax = 20;
  double index_beta = 1.0, index_tol = kDefaultSubsidyTol;
  CLI::App* index = app.add_subcommand("index", "index-vs-horizon table for one kernel");
  index->add_option("--kernel", kernel_csv, "p01_p,p11_p,p01_a,p11_a")->required();
  index->add_option("--beliefs", beliefs_csv, "comma list of belief values");
  index->add_option("--hmax", hmax, "largest residual horizon")->check(CLI::NonNegativeNumber);
  index->add_option("--beta", index_beta, "discount factor");
  index->add_option("--tol", index_tol, "subsidy search tolerance");
  index->add_option("--out", index_out, "output csv path, - for stdout");
  std::string index_config;
  index->add_option("--config", index_config, "key=value file; command-line flags override");

  // simulate
  SimOpts sim_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "run policies on one setting");
  add_sim_options(simulate, sim_opts);
  simulate->add_flag("--timings", sim_opts.timings,
                     "include planning-time stats in the summary (breaks byte reproducibility)");

  // sweep
  SimOpts sweep_opts;
  std::string sweep_var = "lifetime", grid_csv = "3,5,10";
  double keep_product = 0.0;
  CLI::App* sweep = app.add_subcommand("sweep", "repeat simulate over a grid");
  add_sim_options(sweep, sweep_opts);
  sweep->add_option("--sweep", sweep_var,
                    "arrival_rate|lifetime|budget|threshold_fraction|nonrecoverable_fraction");
  sweep->add_option("--grid", grid_csv, "comma list of sweep values");
  sweep->add_option("--keep-product", keep_product,
                    "hold rate*lifetime at this value during lifetime sweeps (0 = off)");

  // bench
  std::string bench_rates = "5,10,20", bench_lifetimes = "3,5,8";
  std::string bench_policies = "exact,tw,linear,logistic";
  std::string bench_out = "results";
  double bench_fixed_rate = 20.0, bench_budget_percent = 10.0;
  int bench_fixed_lifetime = 5, bench_trials = 5, bench_cohort_size = 40;
  std::uint64_t bench_seed = 1;
  double bench_beta = 1.0, bench_tol = kDefaultSubsidyTol;
  CLI::App* bench = app.add_subcommand("bench", "planning-time benchmark");
  bench->add_option("--rates", bench_rates, "arrival-rate grid at the fixed lifetime");
  bench->add_option("--lifetimes", bench_lifetimes, "lifetime grid at the fixed rate");
  bench->add_option("--fixed-rate", bench_fixed_rate, "rate for the lifetime grid");
  bench->add_option("--fixed-lifetime", bench_fixed_lifetime, "lifetime for the rate grid");
  bench->add_option("--budget-percent", bench_budget_percent, "k as a percent of rate*lifetime");
  bench->add_option("--trials", bench_trials, "trials per grid point")->check(CLI::PositiveNumber);
  bench->add_option("--cohort-size", bench_cohort_size, "generated cohort rows");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--beta", bench_beta, "discount factor");
  bench->add_option("--tol", bench_tol, "subsidy search tolerance");
  bench->add_option("--policies", bench_policies, "must include exact");
  bench->add_option("--out", bench_out, "output path prefix");
  int bench_jobs = 1;
  bench->add_option("--jobs", bench_jobs,
                    "accepted for flag symmetry; timing trials always run sequentially");
  std::string bench_config;
  bench->add_option("--config", bench_config, "key=value file; command-line flags override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(validate_path);
    if (app.got_subcommand(index)) {
      if (!index_config.empty()) apply_config_file(index, index_config);
      return cmd_index(kernel_csv, beliefs_csv, hmax, index_beta, index_tol, index_out);
    }
    if (app.got_subcommand(simulate)) {
      if (!sim_opts.config.empty()) apply_config_file(simulate, sim_opts.config);
      return cmd_simulate(sim_opts);
    }
    if (app.got_subcommand(sweep)) {
      if (!sweep_opts.config.empty()) apply_config_file(sweep, sweep_opts.config);
      return cmd_sweep(sweep_opts, sweep_var, grid_csv, keep_product);
    }
    if (app.got_subcommand(bench)) {
      if (!bench_config.empty()) apply_config_file(bench, bench_config);
      return cmd_bench(bench_rates, bench_lifetimes, bench_fixed_rate,
                       bench_fixed_lifetime, bench_budget_percent, bench_trials,
                       bench_cohort_size, bench_seed, bench_beta, bench_tol,
                       bench_policies, bench_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GenerationExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
