#include "rap/verify.hpp"

#include <cmath>
#include <vector>

#include "rap/reliability.hpp"

namespace rap {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

VerifyReport verify_solution(const ProblemInstance& inst,
                             const ClearingResult& result) {
  VerifyReport rep;
  rep.target_reliability = inst.requirement.target_reliability;
  auto flag = [&](std::string code, std::string message) {
    rep.violations.push_back({std::move(code), std::move(message)});
  };

  const Requirement& req = inst.requirement;
  const bool benchmark = inst.formulation == Formulation::UnawareBenchmark;
  const bool linear = formulation_has_linear_constraints(inst.formulation);

  std::vector<double> committed(inst.offers.size(), 0.0);
  double block_volume_sum = 0.0;
  double log_joint = 0.0;
  double weighted_log_joint = 0.0;

  if (!benchmark &&
      result.stats.status != SolveStatus::Infeasible &&
      static_cast<int>(result.assignments.size()) != req.block_count) {
    flag("block_count", "result has " + std::to_string(result.assignments.size()) +
                            " blocks, requirement says " +
                            std::to_string(req.block_count));
  }

  for (const BlockAssignment& block : result.assignments) {
    std::vector<double> rels;
    double weight_sum = 0.0;   // sum of z * log(1-R), correlation-scaled
    double gamma_sum = 0.0;    // sum of correlation products over members
    int count = 0;
    std::vector<char> sources_seen(inst.source_names.size(), 0);
    for (const BlockMember& member : block.members) {
      auto idx = inst.offers.index_of(member.offer_id);
      if (!idx) {
        flag("unknown_offer", "block " + std::to_string(block.block_id) +
                                  " references unknown offer '" +
                                  member.offer_id + "'");
        continue;
      }
      const Offer& o = inst.offers.at(*idx);
      if (!member.accepted) {
        if (member.quantity_mw != 0.0) {
          flag("rejected_quantity", "block " + std::to_string(block.block_id) +
                                        ": rejected offer '" + member.offer_id +
                                        "' carries " + fmt(member.quantity_mw) + " MW");
        }
        continue;
      }
      if (member.quantity_mw + 1e-9 * std::max(1.0, block.volume_mw) <
          block.volume_mw) {
        flag("block_cover", "block " + std::to_string(block.block_id) +
                                ": accepted offer '" + member.offer_id + "' carries " +
                                fmt(member.quantity_mw) + " MW, below the block volume " +
                                fmt(block.volume_mw));
      }
      rels.push_back(o.reliability);
      weight_sum += inst.weight[*idx];
      gamma_sum += inst.gamma[*idx];
      committed[*idx] += member.quantity_mw;
      rep.recomputed_cost += member.quantity_mw * o.price_per_mw;
      rep.recomputed_volume_mw += member.quantity_mw;
      ++count;
      if (inst.formulation == Formulation::SourceRestrictedG) {
        if (sources_seen[inst.source_of[*idx]]) {
          flag("source_unique", "block " + std::to_string(block.block_id) +
                                    " accepts two offers of source '" + o.source + "'");
        }
        sources_seen[inst.source_of[*idx]] = 1;
      }
      if (inst.formulation == Formulation::UniformE && !inst.eligible[*idx]) {
        flag("eligibility", "block " + std::to_string(block.block_id) + ": offer '" +
                                member.offer_id + "' is below the block's R_b");
      }
    }

    double phi = block_reliability(rels);
    if (std::abs(phi - block.reliability) >
        kReliabilityRelTol * std::max(std::abs(phi), 1e-300)) {
      flag("block_reliability", "block " + std::to_string(block.block_id) +
                                    " states reliability " + fmt(block.reliability) +
                                    ", members give " + fmt(phi));
    }
    log_joint += std::log(phi);
    weighted_log_joint += std::log(phi) * gamma_sum;
    block_volume_sum += block.volume_mw;

    if (!benchmark && block.volume_mw + 1e-9 < req.min_block_volume_mw) {
      flag("min_block_volume", "block " + std::to_string(block.block_id) + " carries " +
                                   fmt(block.volume_mw) + " MW, below the minimum " +
                                   fmt(req.min_block_volume_mw));
    }
    if (linear && weight_sum > inst.log_one_minus_psi + kLogSlack &&
        inst.formulation != Formulation::UniformE) {
      flag("psi_floor", "block " + std::to_string(block.block_id) +
                            " misses the block reliability floor");
    }
    if (inst.formulation == Formulation::UniformE &&
        count < inst.min_offers_per_block) {
      flag("min_offers", "block " + std::to_string(block.block_id) + " accepts " +
                             std::to_string(count) + " offers, needs " +
                             std::to_string(inst.min_offers_per_block));
    }
  }

  for (std::size_t i = 0; i < committed.size(); ++i) {
    double cap = inst.offers.at(i).volume_mw;
    if (committed[i] > cap + 1e-9 * std::max(1.0, cap)) {
      flag("capacity", "offer '" + inst.offers.at(i).id + "' committed " +
                           fmt(committed[i]) + " MW of " + fmt(cap));
    }
  }

  if (result.stats.status != SolveStatus::Infeasible || benchmark) {
    if (!result.assignments.empty() &&
        block_volume_sum + 1e-9 * std::max(1.0, req.target_volume_mw) <
            req.target_volume_mw) {
      flag("system_volume", "blocks sum to " + fmt(block_volume_sum) +
                                " MW, requirement is " + fmt(req.target_volume_mw));
    }
  }

  rep.exact_joint_reliability =
      result.assignments.empty() ? 1.0 : std::exp(log_joint);
  rep.joint_reliability_margin =
      rep.exact_joint_reliability - req.target_reliability;
  if (!result.assignments.empty() &&
      log_joint < std::log(req.target_reliability) - kLogSlack) {
    flag("joint_reliability",
         "exact joint reliability " + fmt(rep.exact_joint_reliability) +
             " misses the target " + fmt(req.target_reliability));
  }

  if (inst.formulation == Formulation::CorrelatedF) {
    rep.weighted_joint_checked = true;
    rep.weighted_joint_log = weighted_log_joint;
    if (!result.assignments.empty() &&
        weighted_log_joint < std::log(req.target_reliability) - kLogSlack) {
      flag("weighted_joint_reliability",
           "correlation-weighted joint check (10c) comes out at log " +
               fmt(weighted_log_joint) + " against log target " +
               fmt(std::log(req.target_reliability)));
    }
  }

  double cost_scale = std::max(1.0, std::abs(result.total_cost));
  if (std::abs(rep.recomputed_cost - result.total_cost) > 1e-9 * cost_scale) {
    flag("objective", "stated cost " + fmt(result.total_cost) +
                          " disagrees with recomputed " + fmt(rep.recomputed_cost));
  }
  double vol_scale = std::max(1.0, std::abs(result.total_volume_mw));
  if (std::abs(rep.recomputed_volume_mw - result.total_volume_mw) >
      1e-9 * vol_scale) {
    flag("total_volume", "stated volume " + fmt(result.total_volume_mw) +
                             " disagrees with recomputed " +
                             fmt(rep.recomputed_volume_mw));
  }
  double stated_joint = result.achieved_reliability;
  if (!result.assignments.empty() &&
      std::abs(stated_joint - rep.exact_joint_reliability) >
          1e-9 * std::max(stated_joint, 1e-300)) {
    flag("stated_joint", "stated joint reliability " + fmt(stated_joint) +
                             " disagrees with recomputed " +
                             fmt(rep.exact_joint_reliability));
  }

  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace rap
