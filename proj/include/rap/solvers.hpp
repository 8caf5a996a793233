#pragma once

#include <optional>
#include <vector>

#include "rap/instance.hpp"
#include "rap/simplex.hpp"
#include "rap/types.hpp"

namespace rap {

struct SolveOptions {
  long long node_limit = 1'000'000;
  // OpenMP workers for node waves / enumeration chunks. 1 = serial reference
  // path, 0 = hardware default. Results are identical for every value.
  int workers = 1;
  // Exhaustive enumeration refuses instances with more binaries than this.
  long long enumeration_cap = 24;
  // Above this many binaries the branch-and-bound skips the full per-node
  // simplex relaxation and bounds nodes with the reliability knapsack alone.
  long long lp_node_gate = 128;
  // Optional wall-clock cap in seconds (0 = off). When it triggers, the run
  // is no longer reproducible; prefer node_limit for deterministic caps.
  double time_limit_s = 0.0;
};

/// Fixed-membership volume subproblem: once the binary acceptances are
/// chosen, setting q_{ i,b } = q_b for accepted offers is cost-optimal, so
/// only the block volumes remain, coupled by the per-offer capacities.
struct LpSubproblem {
  std::vector<std::vector<int>> members;    // per block, sorted offer indices
  std::vector<double> block_cost_rate;      // sum of member prices, per MW
};

struct LpSubproblemSolution {
  bool feasible = false;
  double cost = 0.0;
  std::vector<double> block_volume;
  // Per block, (offer index, quantity). Quantities equal the block volume
  // except under UniformE whose acceptance floor can push them higher.
  std::vector<std::vector<std::pair<int, double>>> quantities;
};

LpSubproblem make_subproblem(const ProblemInstance& inst,
                             const std::vector<std::vector<int>>& members);
LpSubproblemSolution solve_subproblem(const ProblemInstance& inst,
                                      const LpSubproblem& sub,
                                      lp::SimplexSolver& simplex);

/// Ground-truth oracle: enumerates every binary acceptance pattern within
/// the cap, keeps patterns satisfying the instance's exact constraints and
/// returns the cheapest volume-LP completion. Throws when the instance
/// exceeds the enumeration cap.
ClearingResult solve_exact_enumeration(const ProblemInstance& inst,
                                       const SolveOptions& opts = {});

/// Branch and bound over the acceptance binaries for the linear formulations
/// (MilpD, UniformE, CorrelatedF, SourceRestrictedG). Proven optimal unless
/// the node limit interrupts, in which case the best incumbent returns with
/// gap_limited status and the proven lower bound in the stats.
ClearingResult solve_branch_and_bound(const ProblemInstance& inst,
                                      const SolveOptions& opts = {});

/// Branch and bound for the log-reformulated exact problem (RminlpC; also
/// accepts MinlpA, which has the identical feasible set). Leaves are
/// evaluated against the exact joint reliability product.
ClearingResult solve_rminlp(const ProblemInstance& inst,
                            const SolveOptions& opts = {});

/// Merit-order clearing of offers at or above the reliability threshold.
/// The ex-post portfolio reliability is the product of the cleared offers'
/// reliabilities; when it misses the target the result is flagged infeasible
/// but still carries cost and volume.
ClearingResult solve_unaware_benchmark(const ProblemInstance& inst,
                                       const SolveOptions& opts = {});

/// Dispatch on the instance's formulation. MinlpA uses exact enumeration
/// within the enumeration cap and otherwise falls back to the equivalent
/// rMINLP branch and bound (which may report gap_limited).
ClearingResult solve(const ProblemInstance& inst, const SolveOptions& opts = {});

}  // namespace rap
