#include "srmab/arrivals.hpp"

#include <cmath>
#include <stdexcept>

#include "srmab/rng.hpp"

namespace srmab {

std::vector<ScheduledArm> generate_schedule(const ArrivalProcess& process,
                                            int horizon, int lifetime,
                                            std::uint64_t stream_seed) {
  if (horizon < 1) throw std::invalid_argument("generate_schedule: horizon must be >= 1");
  if (lifetime < 1) throw std::invalid_argument("generate_schedule: lifetime must be >= 1");

  std::vector<ScheduledArm> schedule;
  switch (process.kind) {
    case ArrivalProcess::Kind::Synchronous: {
      if (process.count < 0) throw std::invalid_argument("generate_schedule: negative count");
      schedule.reserve(static_cast<std::size_t>(process.count));
      for (int i = 0; i < process.count; ++i) schedule.push_back({1, lifetime});
      break;
    }
    case ArrivalProcess::Kind::Deterministic: {
      const double r = process.rate;
      if (!(r >= 0.0) || std::floor(r) != r) {
        throw std::invalid_argument("generate_schedule: deterministic rate must be a non-negative integer");
      }
      const int per_step = static_cast<int>(r);
      schedule.reserve(static_cast<std::size_t>(per_step) * horizon);
      for (int t = 1; t <= horizon; ++t) {
        for (int i = 0; i < per_step; ++i) schedule.push_back({t, lifetime});
      }
      break;
    }
    case ArrivalProcess::Kind::Poisson: {
      if (!(process.rate >= 0.0)) throw std::invalid_argument("generate_schedule: negative rate");
      for (int t = 1; t <= horizon; ++t) {
        const int x = poisson_draw(process.rate, mix(stream_seed, static_cast<std::uint64_t>(t)));
        for (int i = 0; i < x; ++i) schedule.push_back({t, lifetime});
      }
      break;
    }
  }
  return schedule;
}

}  // namespace srmab
