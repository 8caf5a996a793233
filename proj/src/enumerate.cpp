#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "solver_detail.hpp"

namespace rap {

namespace {

struct RangeBest {
  double cost = lp::kInf;
  std::uint64_t code = 0;
  bool found = false;
  long long lp_iterations = 0;
};

// Bit b*n+i of a code accepts offer i in block b, so each block's membership
// is one contiguous bit slice.
std::vector<std::vector<int>> decode(std::uint64_t code, int n, int bk) {
  std::vector<std::vector<int>> members(bk);
  for (int b = 0; b < bk; ++b) {
    std::uint64_t mask = (code >> (static_cast<std::uint64_t>(b) * n)) &
                         ((std::uint64_t{1} << n) - 1);
    while (mask) {
      int i = std::countr_zero(mask);
      members[b].push_back(i);
      mask &= mask - 1;
    }
  }
  return members;
}

// Serial reference kernel; the parallel path splits the code range over
// threads and merges with the (cost, code) total order.
RangeBest best_in_range(const ProblemInstance& inst, std::uint64_t lo,
                        std::uint64_t hi, lp::SimplexSolver& simplex) {
  RangeBest best;
  const int n = inst.num_offers();
  const int bk = inst.num_blocks();
  for (std::uint64_t code = lo; code < hi; ++code) {
    auto members = decode(code, n, bk);
    if (!detail::memberships_feasible(inst, members)) continue;
    LpSubproblem sub = make_subproblem(inst, members);
    LpSubproblemSolution sol = solve_subproblem(inst, sub, simplex);
    if (!sol.feasible) continue;
    if (!best.found || sol.cost < best.cost ||
        (sol.cost == best.cost && code < best.code)) {
      best.found = true;
      best.cost = sol.cost;
      best.code = code;
    }
  }
  return best;
}

}  // namespace

ClearingResult solve_exact_enumeration(const ProblemInstance& inst,
                                       const SolveOptions& opts) {
  if (inst.formulation == Formulation::UnawareBenchmark) {
    throw std::invalid_argument("the unaware benchmark is not an enumerable clearing problem");
  }
  const long long binaries = inst.binaries();
  if (binaries > opts.enumeration_cap) {
    throw std::invalid_argument(
        "instance has " + std::to_string(binaries) +
        " binaries, above the enumeration cap of " +
        std::to_string(opts.enumeration_cap));
  }

  auto t0 = std::chrono::steady_clock::now();
  SolverStats stats;
  stats.workers = opts.workers;

  if (detail::degenerate_requirement(inst)) {
    ClearingResult res = detail::empty_result(inst, SolveStatus::Optimal);
    res.stats.workers = opts.workers;
    return res;
  }

  const std::uint64_t total = std::uint64_t{1} << binaries;
  int workers = opts.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  workers = 1;
#endif

  RangeBest best;
  if (workers == 1) {
    lp::SimplexSolver simplex;
    best = best_in_range(inst, 0, total, simplex);
  } else {
    const int chunks = workers * 8;
    std::vector<RangeBest> results(chunks);
#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
    {
      lp::SimplexSolver simplex;
#pragma omp for schedule(dynamic, 1)
      for (int c = 0; c < chunks; ++c) {
        std::uint64_t lo = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
        std::uint64_t hi = lo + total / chunks + (static_cast<std::uint64_t>(c) < total % chunks ? 1 : 0);
        results[c] = best_in_range(inst, lo, hi, simplex);
      }
    }
#else
    lp::SimplexSolver simplex;
    for (int c = 0; c < chunks; ++c) {
      std::uint64_t lo = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
      std::uint64_t hi = lo + total / chunks + (static_cast<std::uint64_t>(c) < total % chunks ? 1 : 0);
      results[c] = best_in_range(inst, lo, hi, simplex);
    }
#endif
    for (const RangeBest& r : results) {
      if (!r.found) continue;
      if (!best.found || r.cost < best.cost ||
          (r.cost == best.cost && r.code < best.code)) {
        best.found = true;
        best.cost = r.cost;
        best.code = r.code;
      }
    }
  }

  stats.nodes = static_cast<long long>(total);
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!best.found) {
    ClearingResult res = detail::empty_result(inst, SolveStatus::Infeasible);
    res.stats = stats;
    res.stats.status = SolveStatus::Infeasible;
    return res;
  }

  lp::SimplexSolver simplex;
  auto members = decode(best.code, inst.num_offers(), inst.num_blocks());
  LpSubproblemSolution sol =
      solve_subproblem(inst, make_subproblem(inst, members), simplex);
  stats.status = SolveStatus::Optimal;
  stats.lower_bound = sol.cost;
  ClearingResult res = detail::assemble_result(inst, sol, stats);
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace rap
