#include "srmab/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srmab {

double linear_index(int h, double delta_b, double w_inf) {
  if (!(delta_b > 0.0)) throw std::invalid_argument("linear_index: delta_b must be > 0");
  if (w_inf < 0.0) throw std::invalid_argument("linear_index: w_inf must be >= 0");
  if (h < 0) throw std::invalid_argument("linear_index: h must be >= 0");
  return std::min(h * delta_b, w_inf);
}

std::optional<LogisticConstants> logistic_constants(double delta_b, double w_inf) {
  if (!(delta_b > 0.0)) throw std::invalid_argument("logistic_constants: delta_b must be > 0");
  if (w_inf <= 0.0 || delta_b >= w_inf) return std::nullopt;
  LogisticConstants c;
  c.c1 = 2.0 * w_inf;
  c.c3 = -w_inf;
  // The log argument lives in (0,1) exactly when 0 < delta_b < w_inf.
  c.c2 = -std::log(1.0 / (delta_b / c.c1 + 0.5) - 1.0);
  return c;
}

double logistic_index(int h, double delta_b, double w_inf) {
  if (!(delta_b > 0.0)) throw std::invalid_argument("logistic_index: delta_b must be > 0");
  if (h < 0) throw std::invalid_argument("logistic_index: h must be >= 0");
  if (w_inf <= 0.0 || delta_b >= w_inf) return linear_index(h, delta_b, w_inf);
  // exp(-c2) is available in closed form, so exp(-c2 h) is just its h-th
  // power; keeps the per-arm cost close to the linear form.
  const double c1 = 2.0 * w_inf;
  const double z = 1.0 / (delta_b / c1 + 0.5) - 1.0;
  double z_h = 1.0;
  if (h <= 32) {
    for (int i = 0; i < h; ++i) z_h *= z;
  } else {
    z_h = std::pow(z, static_cast<double>(h));
  }
  return c1 / (1.0 + z_h) - w_inf;
}

IndexEstimate estimate_index(InterpolationMode mode, int h, double delta_b,
                             double w_inf) {
  IndexEstimate e;
  e.delta_b = delta_b;
  e.w_inf = w_inf;
  e.h = h;
  if (mode == InterpolationMode::Linear) {
    e.w_hat = linear_index(h, delta_b, w_inf);
  } else {
    e.constants = logistic_constants(delta_b, w_inf);
    e.w_hat = e.constants
                  ? e.constants->c1 / (1.0 + std::exp(-e.constants->c2 * h)) + e.constants->c3
                  : linear_index(h, delta_b, w_inf);
  }
  return e;
}

}  // namespace srmab
