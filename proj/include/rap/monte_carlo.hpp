#pragma once

#include <cstdint>

#include "rap/distribution.hpp"

namespace rap {

/// Philox4x32-10 counter-based generator (Salmon et al.). Stateless: the
/// uniform drawn for (seed, sample, draw) is a pure function of its inputs,
/// so sample ranges can be partitioned over workers in any way without
/// changing a single draw.
namespace rng {

struct Philox4x32 {
  std::uint32_t key[2];
  explicit Philox4x32(std::uint64_t seed)
      : key{static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32)} {}

  // One 128-bit block for the given counter.
  void block(std::uint64_t ctr_lo, std::uint64_t ctr_hi,
             std::uint32_t out[4]) const;
};

/// Uniform in [0,1) for draw index `draw` of sample `sample`.
double uniform(std::uint64_t seed, std::uint64_t sample, std::uint32_t draw);

}  // namespace rng

struct McEstimate {
  double estimate = 0.0;
  double halfwidth95 = 0.0;  // normal approximation
  long long samples = 0;
  long long successes = 0;
};

/// Unbiased Monte Carlo estimate of P(deliverable volume >= target). The
/// per-sample draws are counter-based, so the estimate is bit-identical for
/// every worker count and equals the serial reference.
McEstimate monte_carlo(const std::vector<PortfolioSlice>& slices,
                       const AvailabilityModel& model, double target_volume,
                       long long samples, std::uint64_t seed, int workers = 1);

/// Plain-loop serial reference used by the tests and the benchmark.
McEstimate monte_carlo_serial(const std::vector<PortfolioSlice>& slices,
                              const AvailabilityModel& model,
                              double target_volume, long long samples,
                              std::uint64_t seed);

}  // namespace rap
