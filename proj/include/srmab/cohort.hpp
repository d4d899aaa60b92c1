#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "srmab/kernel.hpp"
#include "srmab/rng.hpp"

namespace srmab {

struct CohortEntry {
  int id = 0;
  TransitionKernel kernel;
  int lifetime = 1;
};

struct Cohort {
  std::vector<CohortEntry> rows;
  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

// Uniform draws on [0,1]^4, rejected until all kernel constraints hold.
// Acceptance rate is 1/12 for the pure ordering constraints.
TransitionKernel sample_kernel(SeedStream& stream, int* attempts = nullptr);

enum class Archetype { SelfCorrecting, NonRecoverable };

// Constraint-satisfying by construction. NonRecoverable arms rarely leave the
// bad state even when pulled; SelfCorrecting arms bounce back on their own.
TransitionKernel make_archetype(Archetype kind, SeedStream& stream);

enum class ThresholdPattern { Forward, Reverse, Mixed };

// Numeric classification at a fixed probe horizon: Forward when the index
// falls as belief rises (pull the non-adherent), Reverse when it rises.
ThresholdPattern classify_threshold_pattern(const TransitionKernel& k,
                                            int probe_horizon = 64,
                                            double beta = 1.0,
                                            double tol = 1e-6);

struct GenerationExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Cohort sample_uniform_cohort(int size, int lifetime, std::uint64_t seed);

// Exactly round(f*size) rows probe Forward; the rest probe Reverse or Mixed.
// Throws GenerationExhaustedError when a class cannot be filled within the
// attempt budget.
Cohort sample_threshold_fraction_cohort(int size, double forward_fraction,
                                        int lifetime, std::uint64_t seed,
                                        long max_attempts = 200000);

// frac_* of the rows from each archetype, remainder uniform-constrained.
Cohort sample_archetype_mix_cohort(int size, double frac_nonrecoverable,
                                   double frac_self_correcting, int lifetime,
                                   std::uint64_t seed);

struct CsvRowError {
  int line = 0;  // 1-based, header is line 1
  std::string message;
};

struct CohortLoadResult {
  Cohort cohort;
  std::vector<CsvRowError> errors;
  bool ok() const { return errors.empty() && !cohort.empty(); }
};

// Format: header `id,p01_p,p11_p,p01_a,p11_a,lifetime`, dot-decimal values,
// LF endings. Rows failing validate_kernel are rejected with their line
// number and the violated inequalities.
CohortLoadResult load_cohort_csv(const std::string& path);
void save_cohort_csv(const Cohort& cohort, const std::string& path);

}  // namespace srmab
