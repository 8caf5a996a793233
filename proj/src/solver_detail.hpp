#pragma once

// Internals shared by the enumeration oracle and the branch-and-bound:
// per-formulation feasibility of a complete acceptance pattern, the volume
// subproblem, and result assembly.

#include <cmath>
#include <vector>

#include "rap/instance.hpp"
#include "rap/reliability.hpp"
#include "rap/simplex.hpp"
#include "rap/solvers.hpp"

namespace rap::detail {

// Positive per-offer weights for the block reliability rows: -log(1-R_i),
// correlation-scaled under CorrelatedF.
inline std::vector<double> positive_weights(const ProblemInstance& inst) {
  std::vector<double> w(inst.weight.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -inst.weight[i];
  return w;
}

// Per-block weight requirement: -log(1-Psi) for the linear formulations and
// the necessary per-block floor -log(1-Phi) for the exact ones (every block
// of a feasible stack must individually reach the system target).
inline double block_weight_requirement(const ProblemInstance& inst) {
  if (formulation_has_linear_constraints(inst.formulation)) {
    return -inst.log_one_minus_psi;
  }
  return -std::log1p(-inst.requirement.target_reliability);
}

inline bool exact_joint_formulation(Formulation f) {
  return f == Formulation::MinlpA || f == Formulation::RminlpC;
}

// log of the joint reliability prod_b phi_b for fixed memberships; -inf when
// any block is empty.
double log_joint_reliability(const ProblemInstance& inst,
                             const std::vector<std::vector<int>>& members);

// Exact feasibility of a complete acceptance pattern under the instance's
// formulation (reliability/count/source rows; volume handled by the LP).
bool memberships_feasible(const ProblemInstance& inst,
                          const std::vector<std::vector<int>>& members);

ClearingResult assemble_result(const ProblemInstance& inst,
                               const LpSubproblemSolution& leaf,
                               SolverStats stats);

ClearingResult empty_result(const ProblemInstance& inst, SolveStatus status);

// Short-circuit for the degenerate zero-volume requirement.
inline bool degenerate_requirement(const ProblemInstance& inst) {
  return inst.requirement.target_volume_mw == 0.0 &&
         inst.requirement.min_block_volume_mw == 0.0;
}

}  // namespace rap::detail
