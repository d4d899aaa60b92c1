#include "srmab/index_table.hpp"

#include <stdexcept>

namespace srmab {

double IndexTable::lookup(Anchor a, int age) const {
  const auto& column = w_inf[static_cast<std::size_t>(a)];
  if (age < 0) throw std::invalid_argument("IndexTable::lookup: negative age");
  // Ages beyond the cap sit on an almost-converged chain tail; clamp.
  if (age > age_cap) age = age_cap;
  return column[static_cast<std::size_t>(age)];
}

std::size_t IndexTable::entries() const {
  std::size_t total = 0;
  for (const auto& column : w_inf) total += column.size();
  return total;
}

bool IndexTable::monotone_along_chains() const {
  for (const auto& column : w_inf) {
    for (std::size_t i = 1; i < column.size(); ++i) {
      if (column[i] > column[i - 1] + 1e-9) return false;
    }
  }
  return true;
}

IndexTable precompute_index_table(const TransitionKernel& k, int age_cap,
                                  double beta, double tol, int max_horizon,
                                  NonConvergence mode) {
  if (age_cap < 0) throw std::invalid_argument("precompute_index_table: negative age cap");
  BeliefChain chain(k);
  chain.ensure(age_cap);

  IndexTable table;
  table.age_cap = age_cap;
  for (int a = 0; a < 4; ++a) {
    auto& values = table.w_inf[static_cast<std::size_t>(a)];
    auto& horizons = table.horizon_used[static_cast<std::size_t>(a)];
    values.resize(static_cast<std::size_t>(age_cap) + 1);
    horizons.resize(static_cast<std::size_t>(age_cap) + 1);
    for (int age = 0; age <= age_cap; ++age) {
      int used = 0;
      double value = 0.0;
      try {
        value = whittle_index_infinite(
            k, chain.value(static_cast<Anchor>(a), age), beta, max_horizon, tol, &used);
      } catch (const ConvergenceError& e) {
        if (mode == NonConvergence::Propagate) throw;
        value = 0.5 * (e.previous + e.latest);
        used = -e.horizon;  // negative marks a fallback node
        ++table.fallback_nodes;
      }
      values[static_cast<std::size_t>(age)] = value;
      horizons[static_cast<std::size_t>(age)] = used;
    }
  }
  return table;
}

}  // namespace srmab
