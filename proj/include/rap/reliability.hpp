#pragma once

#include <span>

namespace rap {

// Reliability algebra. All products are evaluated in log space (sums of
// log1p(-R)) so that stacks of many near-certain offers do not underflow.

/// Horizontal stacking: 1 - prod(1 - R_i). Empty input yields 0.
/// Inputs must lie in [0,1).
double block_reliability(std::span<const double> reliabilities);

/// Vertical stacking: prod(phi_b). Empty input yields 1.
/// Inputs must lie in [0,1].
double stack_reliability(std::span<const double> block_reliabilities);

/// Per-block floor Psi = target^(1/block_count); Psi^block_count recovers the
/// target within 1e-12.
double uniform_block_reliability(double target, int block_count);

/// log(1 - r), the log-unavailability of a single offer.
double log_unavailability(double r);

}  // namespace rap
