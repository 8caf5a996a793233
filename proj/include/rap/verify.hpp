#pragma once

#include <string>
#include <vector>

#include "rap/instance.hpp"
#include "rap/types.hpp"

namespace rap {

struct Violation {
  std::string code;     // stable identifier, e.g. "block_cover", "joint_reliability"
  std::string message;
};

/// Independent re-check of a clearing result against its instance: block
/// cover (accepted quantity >= block volume), rejected-member quantities,
/// capacities, minimum block volume, system volume, the formulation's own
/// reliability rows, and always the exact joint product against the system
/// target. Also recomputes cost/volume/reliability from raw assignments.
struct VerifyReport {
  std::vector<Violation> violations;
  double recomputed_cost = 0.0;
  double recomputed_volume_mw = 0.0;
  double exact_joint_reliability = 1.0;  // product of exact block reliabilities
  double target_reliability = 0.0;
  // Linearized formulations guarantee psi^b_k; positive slack means the true
  // joint reliability overshoots the target.
  double joint_reliability_margin = 0.0;
  // Correlation-weighted joint check of constraint (10c); only meaningful for
  // the correlated formulation, reported alongside the unweighted product.
  double weighted_joint_log = 0.0;
  bool weighted_joint_checked = false;
  bool passed = false;
};

VerifyReport verify_solution(const ProblemInstance& inst,
                             const ClearingResult& result);

}  // namespace rap
