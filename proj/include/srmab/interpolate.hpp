#pragma once

#include <optional>

namespace srmab {

enum class InterpolationMode { Linear, Logistic };

struct LogisticConstants {
  double c1 = 0.0;  // 2 * w_inf
  double c2 = 0.0;
  double c3 = 0.0;  // -w_inf
};

// min(h * delta_b, w_inf): through the origin, slope delta_b, capped at the
// infinite-horizon value. Requires delta_b > 0 and w_inf >= 0.
double linear_index(int h, double delta_b, double w_inf);

// Constants pinned by W(0)=0, W(1)=delta_b, W(inf)=w_inf. Empty when the
// system is unsolvable (delta_b >= w_inf or w_inf <= 0); callers fall back to
// the linear form there.
std::optional<LogisticConstants> logistic_constants(double delta_b, double w_inf);

// c1 / (1 + exp(-c2 h)) + c3, falling back to linear_index when the constants
// are undefined. Never returns NaN.
double logistic_index(int h, double delta_b, double w_inf);

struct IndexEstimate {
  double delta_b = 0.0;
  double w_inf = 0.0;
  int h = 0;
  double w_hat = 0.0;
  std::optional<LogisticConstants> constants;  // logistic mode only
};

IndexEstimate estimate_index(InterpolationMode mode, int h, double delta_b,
                             double w_inf);

}  // namespace srmab
