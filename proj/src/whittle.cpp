#include "srmab/whittle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "srmab/value.hpp"

namespace srmab {

namespace {

std::string crossing_message(double lo, double hi, double glo, double ghi) {
  std::ostringstream os;
  os << "no sign change of V^p - V^a on [" << lo << ", " << hi << "] (gaps "
     << glo << ", " << ghi << ")";
  return os.str();
}

std::string convergence_message(double prev, double latest, int horizon) {
  std::ostringstream os;
  os << "index did not converge by horizon " << horizon << " (last iterates "
     << prev << ", " << latest << ")";
  return os.str();
}

}  // namespace

NoCrossingError::NoCrossingError(double lo_, double hi_, double gap_lo_, double gap_hi_)
    : std::runtime_error(crossing_message(lo_, hi_, gap_lo_, gap_hi_)),
      lo(lo_), hi(hi_), gap_lo(gap_lo_), gap_hi(gap_hi_) {}

ConvergenceError::ConvergenceError(double previous_, double latest_, int horizon_)
    : std::runtime_error(convergence_message(previous_, latest_, horizon_)),
      previous(previous_), latest(latest_), horizon(horizon_) {}

double whittle_index_finite(const TransitionKernel& k, double belief, int horizon,
                            double beta, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("whittle_index_finite: tol must be > 0");
  if (horizon < 0) throw std::invalid_argument("whittle_index_finite: horizon must be >= 0");
  // V^p - V^a equals m exactly at horizon 0.
  if (horizon == 0) return 0.0;

  const auto gap = [&](double m) {
    const ValuePair v = value_pair(ValueQuery{k, belief, m, horizon, beta});
    return v.v_passive - v.v_active;
  };

  double lo = -1.0, hi = 1.0;
  double glo = gap(lo), ghi = gap(hi);
  while (glo * ghi > 0.0 && hi < 8.0) {
    lo *= 2.0;
    hi *= 2.0;
    glo = gap(lo);
    ghi = gap(hi);
  }
  if (glo * ghi > 0.0) throw NoCrossingError(lo, hi, glo, ghi);

  // The gap is continuous and non-decreasing in m on indexable instances.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Candidate limit value at horizon h. With beta = 1 the finite-horizon
// indifference subsidy need not converge pointwise: it settles into a short
// cycle whose period is the optimal pull cadence at indifference. When h and
// h+1 already agree the plain value is the candidate; otherwise the cycle is
// detected and its phase average returned. NaN when neither applies yet.
// *rough_mean is always filled with a finite estimate for error reporting.
double limit_candidate(const TransitionKernel& k, double belief, int h,
                       double beta, double tol, double search_tol,
                       double* rough_mean) {
  const double m0 = whittle_index_finite(k, belief, h, beta, search_tol);
  const double m1 = whittle_index_finite(k, belief, h + 1, beta, search_tol);
  if (rough_mean) *rough_mean = 0.5 * (m0 + m1);
  if (std::abs(m1 - m0) < 0.5 * tol) return m0;

  constexpr int kMaxPeriod = 12;
  constexpr int kWindow = 2 * kMaxPeriod + 2;
  double window[kWindow];
  window[0] = m0;
  window[1] = m1;
  for (int i = 2; i < kWindow; ++i) {
    window[i] = whittle_index_finite(k, belief, h + i, beta, search_tol);
  }
  const double match_tol = std::max(tol / 4.0, 4.0 * search_tol);
  for (int period = 2; period <= kMaxPeriod; ++period) {
    bool periodic = true;
    for (int i = 0; i + period < kWindow; ++i) {
      if (std::abs(window[i + period] - window[i]) > match_tol) {
        periodic = false;
        break;
      }
    }
    if (periodic) {
      double sum = 0.0;
      for (int i = 0; i < period; ++i) sum += window[i];
      return sum / period;
    }
  }

  // No clean cycle, but a wobble already confined to one tol band is as
  // converged as finite-horizon probing can make it.
  double lo = window[0], hi = window[0], sum = 0.0;
  for (double v : window) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  if (rough_mean) *rough_mean = sum / kWindow;
  if (hi - lo <= tol) return sum / kWindow;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double whittle_index_infinite(const TransitionKernel& k, double belief, double beta,
                              int max_horizon, double tol, int* horizon_used) {
  if (max_horizon < 1) throw std::invalid_argument("whittle_index_infinite: max_horizon must be >= 1");
  // Tighter subsidy search so the doubling comparison measures the horizon
  // tail, not bisection noise.
  const double search_tol = tol / 8.0;
  int h = 8;
  double prev_rough = 0.0, rough = 0.0;
  double prev = limit_candidate(k, belief, std::min(h, max_horizon), beta, tol,
                                search_tol, &prev_rough);
  while (h < max_horizon) {
    h = std::min(h * 2, max_horizon);
    const double cur = limit_candidate(k, belief, h, beta, tol, search_tol, &rough);
    if (std::isfinite(cur) && std::isfinite(prev) && std::abs(cur - prev) < tol) {
      if (horizon_used) *horizon_used = h;
      return cur;
    }
    if (h >= max_horizon) {
      throw ConvergenceError(std::isfinite(prev) ? prev : prev_rough,
                             std::isfinite(cur) ? cur : rough, h);
    }
    prev = cur;
    prev_rough = rough;
  }
  throw ConvergenceError(prev_rough, prev_rough, h);
}

IndexabilityReport indexability_probe(const TransitionKernel& k, double belief,
                                      int horizon, double m_resolution, double beta) {
  if (m_resolution <= 0.0) throw std::invalid_argument("indexability_probe: resolution must be > 0");

  const auto gap = [&](double m) {
    const ValuePair v = value_pair(ValueQuery{k, belief, m, horizon, beta});
    return v.v_passive - v.v_active;
  };

  double lo = -1.0, hi = 1.0;
  while (gap(lo) * gap(hi) > 0.0 && hi < 8.0) {
    lo *= 2.0;
    hi *= 2.0;
  }

  IndexabilityReport report;
  report.grid_lo = lo;
  report.grid_hi = hi;

  constexpr double kTieEps = 1e-12;
  // -1 active, 0 tie, +1 passive
  int previous = 2;
  bool saw_active = false, saw_passive = false;
  const int steps = static_cast<int>(std::ceil((hi - lo) / m_resolution));
  for (int i = 0; i <= steps; ++i) {
    const double m = (i == steps) ? hi : lo + i * m_resolution;
    const double g = gap(m);
    const int state = (g < -kTieEps) ? -1 : (g > kTieEps ? 1 : 0);
    saw_active |= state == -1;
    saw_passive |= state == 1;
    if (previous != 2 && state > previous) {
      ++report.crossings;
      report.crossing_subsidy = m;  // ties count as the crossing point
    }
    if (previous != 2 && state < previous) ++report.reverse_switches;
    previous = state;
  }

  report.inconclusive = !(saw_active && saw_passive);
  report.single_crossing =
      !report.inconclusive && report.reverse_switches == 0 && report.crossings <= 2;
  // crossings counts active->tie and tie->passive separately when the grid
  // lands on an exact indifference point; both describe one crossing.
  if (report.crossings == 2 && report.single_crossing) report.crossings = 1;
  return report;
}

DecayProbe decay_probe(const TransitionKernel& k, double belief, int t_max,
                       double beta, double tol) {
  if (t_max < 1) throw std::invalid_argument("decay_probe: t_max must be >= 1");

  DecayProbe probe;
  probe.m0 = 0.0;
  probe.m1_closed_form = beta * myopic_index(k, belief);
  probe.m1_search = whittle_index_finite(k, belief, 1, beta, std::min(tol, 1e-6));
  probe.m_series.reserve(static_cast<std::size_t>(t_max > 1 ? t_max - 1 : 0));
  for (int t = 2; t <= t_max; ++t) {
    probe.m_series.push_back(whittle_index_finite(k, belief, t, beta, tol));
  }

  // Exact expected-belief trajectories, identical (passive) actions after
  // step 0. Affine recurrences, no sampling.
  probe.rho_active.resize(static_cast<std::size_t>(t_max) + 1);
  probe.rho_passive.resize(static_cast<std::size_t>(t_max) + 1);
  probe.rho_active[0] = belief;
  probe.rho_passive[0] = belief;
  probe.rho_active[1] = belief * k.p11_a + (1.0 - belief) * k.p01_a;
  probe.rho_passive[1] = k.passive_step(belief);
  for (int t = 2; t <= t_max; ++t) {
    probe.rho_active[static_cast<std::size_t>(t)] =
        k.passive_step(probe.rho_active[static_cast<std::size_t>(t) - 1]);
    probe.rho_passive[static_cast<std::size_t>(t)] =
        k.passive_step(probe.rho_passive[static_cast<std::size_t>(t) - 1]);
  }

  const IndexabilityReport ix = indexability_probe(k, belief, t_max, 0.02, beta);
  probe.verifiable = ix.single_crossing;
  return probe;
}

}  // namespace srmab
