#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "srmab/kernel.hpp"

namespace srmab {

// Subsidy search found no sign change of V^p - V^a in the maximal bracket.
// Reported to the caller instead of clamping.
struct NoCrossingError : std::runtime_error {
  NoCrossingError(double lo_, double hi_, double gap_lo_, double gap_hi_);
  double lo, hi, gap_lo, gap_hi;
};

// Horizon doubling hit the cap before successive indices agreed.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(double previous_, double latest_, int horizon_);
  double previous, latest;
  int horizon;
};

inline constexpr double kDefaultSubsidyTol = 1e-4;
inline constexpr int kDefaultMaxHorizon = 4096;

// Indifference subsidy at the given residual horizon, by bisection on
// V^p_m - V^a_m. Bracket starts at [-1,1] and doubles up to [-8,8] until the
// endpoint signs differ. horizon 0 returns exactly 0.
double whittle_index_finite(const TransitionKernel& k, double belief, int horizon,
                            double beta = 1.0, double tol = kDefaultSubsidyTol);

// Infinite-horizon index surrogate: the finite index at a horizon doubled
// until consecutive doublings agree within tol. This is the saturation value
// fed to the interpolated indices; a closed-form oracle can be slotted behind
// the same signature later.
double whittle_index_infinite(const TransitionKernel& k, double belief,
                              double beta = 1.0, int max_horizon = kDefaultMaxHorizon,
                              double tol = kDefaultSubsidyTol,
                              int* horizon_used = nullptr);

// Numeric single-crossing probe over a subsidy grid: as m grows the optimal
// action may switch active -> passive at most once and never back. Exact
// indifference points count as the crossing.
struct IndexabilityReport {
  bool single_crossing = false;
  bool inconclusive = false;  // grid never saw both actions
  int crossings = 0;
  int reverse_switches = 0;
  double crossing_subsidy = 0.0;
  double grid_lo = 0.0, grid_hi = 0.0;
};

IndexabilityReport indexability_probe(const TransitionKernel& k, double belief,
                                      int horizon, double m_resolution,
                                      double beta = 1.0);

// Exact short-horizon anatomy of one (kernel, belief): indifference subsidies
// m_0..m_Tmax plus the expected-belief trajectories with matched policies
// after step 0 (active step 0 versus passive step 0, passive afterwards).
struct DecayProbe {
  double m0 = 0.0;              // analytic, always 0
  double m1_closed_form = 0.0;  // beta * myopic gain
  double m1_search = 0.0;       // same point found by bisection
  std::vector<double> m_series;       // m_t for t = 2..t_max
  std::vector<double> rho_active;     // index t = 0..t_max
  std::vector<double> rho_passive;
  bool verifiable = false;  // indexability probe verdict at t_max
};

DecayProbe decay_probe(const TransitionKernel& k, double belief, int t_max,
                       double beta = 1.0, double tol = kDefaultSubsidyTol);

}  // namespace srmab
