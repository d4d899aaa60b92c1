#include "srmab/kernel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace srmab {

KernelValidation validate_kernel(const TransitionKernel& k) {
  const std::array<std::pair<const char*, double>, 4> entries = {{
      {"p01_p", k.p01_p},
      {"p11_p", k.p11_p},
      {"p01_a", k.p01_a},
      {"p11_a", k.p11_a},
  }};
  for (const auto& [name, v] : entries) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string("non-finite kernel entry: ") + name);
    }
  }

  KernelValidation report;
  for (const auto& [name, v] : entries) {
    if (v < 0.0 || v > 1.0) {
      report.violations.push_back(std::string(name) + " in [0,1]");
    }
  }
  if (!(k.p01_a > k.p01_p)) report.violations.push_back("p01_a>p01_p");
  if (!(k.p11_a > k.p11_p)) report.violations.push_back("p11_a>p11_p");
  if (!(k.p11_a > k.p01_a)) report.violations.push_back("p11_a>p01_a");
  if (!(k.p11_p > k.p01_p)) report.violations.push_back("p11_p>p01_p");
  return report;
}

double myopic_index(const TransitionKernel& k, double b) {
  return (b * k.p11_a + (1.0 - b) * k.p01_a) -
         (b * k.p11_p + (1.0 - b) * k.p01_p);
}

}  // namespace srmab
