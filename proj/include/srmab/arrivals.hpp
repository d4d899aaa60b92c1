#pragma once

#include <cstdint>
#include <vector>

namespace srmab {

// Synchronous: all `count` arms at t=1. Deterministic: exactly `rate` arms
// every step. Poisson: X(t) i.i.d. Poisson(rate) from the seeded stream.
struct ArrivalProcess {
  enum class Kind { Synchronous, Deterministic, Poisson };
  Kind kind = Kind::Synchronous;
  double rate = 0.0;  // deterministic / poisson
  int count = 0;      // synchronous
};

struct ScheduledArm {
  int arrival_time = 1;
  int lifetime = 1;
};

// Arms in arrival order (position = arm id). Departures are implied at
// arrival_time + lifetime. Deterministic given the stream seed.
std::vector<ScheduledArm> generate_schedule(const ArrivalProcess& process,
                                            int horizon, int lifetime,
                                            std::uint64_t stream_seed);

}  // namespace srmab
