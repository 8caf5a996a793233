#include <algorithm>
#include <chrono>
#include <numeric>

#include "solver_detail.hpp"

namespace rap {

// Conventional merit-order clearing: only offers at or above the reliability
// threshold qualify, cleared price-ascending until the volume is covered.
// Each cleared offer forms its own vertical slice, so the ex-post portfolio
// reliability is the product of the cleared reliabilities.
ClearingResult solve_unaware_benchmark(const ProblemInstance& inst,
                                       const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  const Requirement& req = inst.requirement;

  if (detail::degenerate_requirement(inst)) {
    ClearingResult res = detail::empty_result(inst, SolveStatus::Optimal);
    res.stats.workers = opts.workers;
    return res;
  }

  std::vector<int> order(inst.offers.size());
  std::iota(order.begin(), order.end(), 0);
  order.erase(std::remove_if(order.begin(), order.end(),
                             [&](int i) {
                               return inst.offers.at(i).reliability <
                                      inst.benchmark_threshold - 1e-12;
                             }),
              order.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double pa = inst.offers.at(a).price_per_mw;
    double pb = inst.offers.at(b).price_per_mw;
    if (pa != pb) return pa < pb;
    return inst.offers.at(a).id < inst.offers.at(b).id;
  });

  ClearingResult res;
  res.formulation = static_cast<int>(inst.formulation);
  res.stats.workers = opts.workers;

  double remaining = req.target_volume_mw;
  std::vector<double> phis;
  int block_id = 0;
  for (int i : order) {
    if (remaining <= 0.0) break;
    const Offer& o = inst.offers.at(i);
    double q = std::min(o.volume_mw, remaining);
    remaining -= q;
    BlockAssignment block;
    block.block_id = ++block_id;
    block.volume_mw = q;
    block.reliability = o.reliability;
    block.members.push_back({o.id, true, q});
    phis.push_back(o.reliability);
    res.total_cost += q * o.price_per_mw;
    res.total_volume_mw += q;
    res.assignments.push_back(std::move(block));
  }

  res.achieved_reliability = stack_reliability(phis);
  res.stats.nodes = static_cast<long long>(order.size());
  if (remaining > 1e-9) {
    // Insufficient qualifying volume: nothing sensible to report.
    res.assignments.clear();
    res.total_cost = 0.0;
    res.total_volume_mw = 0.0;
    res.achieved_reliability = 1.0;
    res.stats.status = SolveStatus::Infeasible;
  } else if (res.achieved_reliability <
             req.target_reliability - kLogSlack) {
    res.reliability_shortfall = true;
    res.stats.status = SolveStatus::Infeasible;
  } else {
    res.stats.status = SolveStatus::Optimal;
    res.stats.lower_bound = res.total_cost;
  }
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace rap
