#include "solver_detail.hpp"

#include <algorithm>

namespace rap::detail {

double log_joint_reliability(const ProblemInstance& inst,
                             const std::vector<std::vector<int>>& members) {
  double sum = 0.0;
  for (const auto& block : members) {
    double log_unavail = 0.0;
    for (int i : block) log_unavail += std::log1p(-inst.offers.at(i).reliability);
    if (block.empty()) return -lp::kInf;
    double unavail = std::exp(log_unavail);
    if (unavail >= 1.0) return -lp::kInf;
    sum += std::log1p(-unavail);
  }
  return sum;
}

bool memberships_feasible(const ProblemInstance& inst,
                          const std::vector<std::vector<int>>& members) {
  switch (inst.formulation) {
    case Formulation::MinlpA:
    case Formulation::RminlpC: {
      double target = std::log(inst.requirement.target_reliability);
      return log_joint_reliability(inst, members) >= target - kLogSlack;
    }
    case Formulation::MilpD:
    case Formulation::CorrelatedF:
    case Formulation::SourceRestrictedG: {
      for (const auto& block : members) {
        double w = 0.0;
        for (int i : block) w += inst.weight[i];
        if (w > inst.log_one_minus_psi + kLogSlack) return false;
      }
      if (inst.formulation == Formulation::SourceRestrictedG) {
        std::vector<char> used(inst.source_names.size());
        for (const auto& block : members) {
          std::fill(used.begin(), used.end(), 0);
          for (int i : block) {
            if (used[inst.source_of[i]]) return false;
            used[inst.source_of[i]] = 1;
          }
        }
      }
      return true;
    }
    case Formulation::UniformE: {
      for (const auto& block : members) {
        if (static_cast<int>(block.size()) < inst.min_offers_per_block) return false;
        for (int i : block) {
          if (!inst.eligible[i]) return false;
        }
      }
      return true;
    }
    case Formulation::UnawareBenchmark:
      return false;  // not a combinatorial clearing problem
  }
  return false;
}

}  // namespace rap::detail

namespace rap {

LpSubproblem make_subproblem(const ProblemInstance& inst,
                             const std::vector<std::vector<int>>& members) {
  LpSubproblem sub;
  sub.members.resize(members.size());
  sub.block_cost_rate.resize(members.size(), 0.0);
  for (std::size_t b = 0; b < members.size(); ++b) {
    sub.members[b] = members[b];
    std::sort(sub.members[b].begin(), sub.members[b].end());
    for (int i : sub.members[b]) {
      sub.block_cost_rate[b] += inst.offers.at(i).price_per_mw;
    }
  }
  return sub;
}

LpSubproblemSolution solve_subproblem(const ProblemInstance& inst,
                                      const LpSubproblem& sub,
                                      lp::SimplexSolver& simplex) {
  LpSubproblemSolution out;
  const int bk = static_cast<int>(sub.members.size());
  const Requirement& req = inst.requirement;
  const bool uniform_e = inst.formulation == Formulation::UniformE;
  // UniformE's acceptance row forces q_{i,b} >= Psi/R_b on accepted offers,
  // so quantities get their own variables there; everywhere else they
  // collapse onto the block volume.
  double e_floor = 0.0;
  if (uniform_e) {
    e_floor = inst.psi / *inst.params.uniform_offer_reliability;
  }

  lp::Model model;
  std::vector<int> qb(bk);
  for (int b = 0; b < bk; ++b) {
    qb[b] = model.add_variable("q_b" + std::to_string(b + 1),
                               req.min_block_volume_mw, lp::kInf,
                               uniform_e ? 0.0 : sub.block_cost_rate[b]);
  }
  std::vector<std::vector<int>> qib;
  if (uniform_e) {
    qib.resize(bk);
    for (int b = 0; b < bk; ++b) {
      for (int i : sub.members[b]) {
        const Offer& o = inst.offers.at(i);
        int v = model.add_variable("q_i" + std::to_string(i) + "_b" +
                                       std::to_string(b + 1),
                                   e_floor, lp::kInf, o.price_per_mw);
        qib[b].push_back(v);
        // accepted quantity covers the block volume
        lp::Row link;
        link.terms = {{qb[b], 1.0}, {v, -1.0}};
        link.sense = lp::Sense::LE;
        link.rhs = 0.0;
        model.add_row(std::move(link));
      }
    }
  }

  lp::Row volume;
  for (int b = 0; b < bk; ++b) volume.terms.emplace_back(qb[b], 1.0);
  volume.sense = lp::Sense::GE;
  volume.rhs = req.target_volume_mw;
  model.add_row(std::move(volume));

  // Capacity coupling per offer appearing anywhere.
  const int n = inst.num_offers();
  std::vector<std::vector<std::pair<int, int>>> blocks_of(n);  // (block, slot)
  for (int b = 0; b < bk; ++b) {
    for (std::size_t k = 0; k < sub.members[b].size(); ++k) {
      blocks_of[sub.members[b][k]].emplace_back(b, static_cast<int>(k));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (blocks_of[i].empty()) continue;
    lp::Row cap;
    for (auto [b, k] : blocks_of[i]) {
      cap.terms.emplace_back(uniform_e ? qib[b][k] : qb[b], 1.0);
    }
    cap.sense = lp::Sense::LE;
    cap.rhs = inst.offers.at(i).volume_mw;
    model.add_row(std::move(cap));
  }

  lp::Solution sol = simplex.solve(model);
  if (sol.status != lp::SolveStatus::Optimal) return out;

  out.feasible = true;
  out.block_volume.resize(bk);
  out.quantities.resize(bk);
  out.cost = 0.0;
  for (int b = 0; b < bk; ++b) {
    out.block_volume[b] = sol.x[qb[b]];
    for (std::size_t k = 0; k < sub.members[b].size(); ++k) {
      int i = sub.members[b][k];
      double q = uniform_e ? sol.x[qib[b][k]] : sol.x[qb[b]];
      out.quantities[b].emplace_back(i, q);
      out.cost += q * inst.offers.at(i).price_per_mw;
    }
  }
  return out;
}

}  // namespace rap

namespace rap::detail {

ClearingResult assemble_result(const ProblemInstance& inst,
                               const LpSubproblemSolution& leaf,
                               SolverStats stats) {
  ClearingResult res;
  res.formulation = static_cast<int>(inst.formulation);
  res.stats = stats;
  std::vector<double> phis;
  for (std::size_t b = 0; b < leaf.quantities.size(); ++b) {
    BlockAssignment block;
    block.block_id = static_cast<int>(b) + 1;
    block.volume_mw = leaf.block_volume[b];
    std::vector<double> rels;
    for (auto [i, q] : leaf.quantities[b]) {
      const Offer& o = inst.offers.at(i);
      block.members.push_back({o.id, true, q});
      rels.push_back(o.reliability);
      res.total_cost += q * o.price_per_mw;
      res.total_volume_mw += q;
    }
    block.reliability = block_reliability(rels);
    phis.push_back(block.reliability);
    res.assignments.push_back(std::move(block));
  }
  res.achieved_reliability = stack_reliability(phis);
  return res;
}

ClearingResult empty_result(const ProblemInstance& inst, SolveStatus status) {
  ClearingResult res;
  res.formulation = static_cast<int>(inst.formulation);
  res.stats.status = status;
  res.achieved_reliability = 1.0;
  return res;
}

}  // namespace rap::detail
