#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace srmab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-style stream derivation: every random quantity in the project is a
// pure function of (seed, words...), so replays and thread schedules cannot
// shift any stream.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t word) {
  return splitmix64(seed ^ (word * 0xD1342543DE82EF95ull + kGoldenGamma));
}
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(seed, a), b);
}
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  return mix(mix(seed, a, b), c);
}

// Uniform in [0, 1), 53 mantissa bits.
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sub-stream tags. Keeping them in one place avoids accidental collisions
// between modules deriving from the same trial seed.
enum StreamTag : std::uint64_t {
  kTrialStream = 0x1001,
  kArrivalStream = 0x2002,
  kInitialStateStream = 0x3003,
  kTransitionStream = 0x4004,
  kPolicyStream = 0x5005,
  kCohortAssignStream = 0x6006,
  kCohortGenStream = 0x7007,
};

// Sequential view over the stateless hash; cheap to construct and copy.
struct SeedStream {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  double u01() { return srmab::u01(mix(seed, n++)); }
  std::uint64_t u64() { return mix(seed, n++); }
};

// Knuth product method, halving recursively so exp(-lambda) never underflows.
inline int poisson_draw(double lambda, std::uint64_t stream_seed) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("poisson_draw: lambda must be >= 0");
  if (lambda == 0.0) return 0;
  if (lambda > 30.0) {
    return poisson_draw(lambda / 2.0, mix(stream_seed, 0x10)) +
           poisson_draw(lambda / 2.0, mix(stream_seed, 0x20));
  }
  const double limit = std::exp(-lambda);
  double p = 1.0;
  int k = 0;
  std::uint64_t i = 0;
  do {
    p *= u01(mix(stream_seed, i++));
    ++k;
  } while (p > limit);
  return k - 1;
}

}  // namespace srmab
