#include "rap/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace rap {

double log_unavailability(double r) {
  if (!(r >= 0.0) || r >= 1.0) {
    throw std::invalid_argument("reliability must lie in [0,1)");
  }
  return std::log1p(-r);
}

double block_reliability(std::span<const double> reliabilities) {
  double log_unavail = 0.0;
  for (double r : reliabilities) log_unavail += log_unavailability(r);
  if (reliabilities.empty()) return 0.0;
  return -std::expm1(log_unavail);
}

double stack_reliability(std::span<const double> block_reliabilities) {
  double log_rel = 0.0;
  for (double phi : block_reliabilities) {
    if (!(phi >= 0.0) || !(phi <= 1.0)) {
      throw std::invalid_argument("block reliability must lie in [0,1]");
    }
    log_rel += std::log(phi);  // phi == 0 gives -inf, product 0
  }
  return std::exp(log_rel);
}

double uniform_block_reliability(double target, int block_count) {
  if (!(target > 0.0) || !(target < 1.0)) {
    throw std::invalid_argument("target reliability must lie in (0,1)");
  }
  if (block_count < 1) {
    throw std::invalid_argument("block count must be at least 1");
  }
  if (block_count == 1) return target;
  return std::pow(target, 1.0 / static_cast<double>(block_count));
}

}  // namespace rap
