#include <cmath>
#include <limits>

#include "doctest.h"
#include "srmab/belief.hpp"
#include "srmab/cohort.hpp"
#include "srmab/kernel.hpp"

using namespace srmab;

namespace {
// Example matrices used throughout the test suite.
const TransitionKernel kExample{0.06, 0.46, 0.46, 0.60};
}  // namespace

TEST_CASE("validate_kernel accepts the example matrices") {
  CHECK(validate_kernel(kExample).ok());
}

TEST_CASE("validate_kernel names every violated inequality") {
  TransitionKernel equal{0.3, 0.6, 0.3, 0.6};  // active == passive
  const auto report = validate_kernel(equal);
  REQUIRE(report.violations.size() == 2);
  CHECK(report.violations[0] == "p01_a>p01_p");
  CHECK(report.violations[1] == "p11_a>p11_p");

  TransitionKernel sticky_broken{0.5, 0.4, 0.6, 0.7};
  const auto sticky = validate_kernel(sticky_broken);
  REQUIRE(sticky.violations.size() == 1);
  CHECK(sticky.violations[0] == "p11_p>p01_p");
}

TEST_CASE("validate_kernel reports out-of-range entries") {
  TransitionKernel k{-0.1, 0.5, 0.6, 1.2};
  const auto report = validate_kernel(k);
  CHECK(!report.ok());
  bool saw_low = false, saw_high = false;
  for (const auto& v : report.violations) {
    if (v == "p01_p in [0,1]") saw_low = true;
    if (v == "p11_a in [0,1]") saw_high = true;
  }
  CHECK(saw_low);
  CHECK(saw_high);
}

TEST_CASE("validate_kernel throws on non-finite entries") {
  TransitionKernel k = kExample;
  k.p01_a = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_kernel(k), std::invalid_argument);
}

TEST_CASE("myopic index at the example kernel") {
  CHECK(myopic_index(kExample, 0.0) == doctest::Approx(0.40).epsilon(1e-12));
  CHECK(myopic_index(kExample, 1.0) == doctest::Approx(0.14).epsilon(1e-12));
  CHECK(myopic_index(kExample, 0.1) == doctest::Approx(0.374).epsilon(1e-12));
}

TEST_CASE("myopic index is positive under the natural constraints") {
  SeedStream stream{101, 0};
  for (int i = 0; i < 200; ++i) {
    const TransitionKernel k = sample_kernel(stream);
    for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(myopic_index(k, b) > 0.0);
    }
  }
}
