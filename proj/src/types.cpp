#include "rap/types.hpp"

#include <cmath>
#include <stdexcept>

#include "rap/reliability.hpp"

namespace rap {

OfferBook::OfferBook(std::vector<Offer> offers) : offers_(std::move(offers)) {
  index_.reserve(offers_.size());
  for (std::size_t i = 0; i < offers_.size(); ++i) {
    const Offer& o = offers_[i];
    if (o.id.empty()) {
      throw std::invalid_argument("offer at position " + std::to_string(i) +
                                  " has an empty id");
    }
    if (!(o.volume_mw > 0.0)) {
      throw std::invalid_argument("offer '" + o.id + "': volume must be positive");
    }
    if (!(o.price_per_mw >= 0.0)) {
      throw std::invalid_argument("offer '" + o.id + "': price must be nonnegative");
    }
    if (!(o.reliability >= 0.0) || o.reliability >= 1.0) {
      throw std::invalid_argument(
          "offer '" + o.id +
          "': reliability must lie in [0,1); a 100% reliable offer is not accepted");
    }
    if (!index_.emplace(o.id, i).second) {
      throw std::invalid_argument("duplicate offer id '" + o.id + "'");
    }
    max_volume_ = std::max(max_volume_, o.volume_mw);
  }
}

std::optional<std::size_t> OfferBook::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Requirement::validate() const {
  if (!(target_volume_mw >= 0.0) || !std::isfinite(target_volume_mw)) {
    throw std::invalid_argument("requirement: target volume must be nonnegative");
  }
  if (!(target_reliability > 0.0) || !(target_reliability < 1.0)) {
    throw std::invalid_argument("requirement: target reliability must lie in (0,1)");
  }
  if (!(min_block_volume_mw >= 0.0)) {
    throw std::invalid_argument("requirement: minimum block volume must be nonnegative");
  }
  if (block_count < 1) {
    throw std::invalid_argument("requirement: block count must be at least 1");
  }
  if (big_m && !(*big_m > 0.0)) {
    throw std::invalid_argument("requirement: big-M must be positive");
  }
}

int derive_block_count(double target_volume_mw, double min_bid_size_mw) {
  if (!(min_bid_size_mw > 0.0)) {
    throw std::invalid_argument("minimum bid size must be positive");
  }
  if (!(target_volume_mw > 0.0)) {
    throw std::invalid_argument("target volume must be positive");
  }
  // Guard against ratios that land epsilon above an integer.
  double k = std::ceil(target_volume_mw / min_bid_size_mw - 1e-9);
  return static_cast<int>(k < 1.0 ? 1.0 : k);
}

std::string_view solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::GapLimited: return "gap_limited";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

PortfolioMetrics portfolio_metrics(const OfferBook& book,
                                   const std::vector<BlockAssignment>& assignments) {
  PortfolioMetrics m;
  std::vector<double> phis;
  phis.reserve(assignments.size());
  for (const BlockAssignment& block : assignments) {
    std::vector<double> rels;
    for (const BlockMember& member : block.members) {
      auto idx = book.index_of(member.offer_id);
      if (!idx) {
        throw std::invalid_argument("assignment references unknown offer '" +
                                    member.offer_id + "'");
      }
      const Offer& offer = book.at(*idx);
      if (member.accepted) {
        if (member.quantity_mw + kRelTol * std::max(1.0, block.volume_mw) <
            block.volume_mw) {
          throw std::invalid_argument(
              "block " + std::to_string(block.block_id) + ": accepted offer '" +
              member.offer_id + "' carries less than the block volume");
        }
        rels.push_back(offer.reliability);
        m.total_cost += member.quantity_mw * offer.price_per_mw;
        m.total_volume_mw += member.quantity_mw;
      } else if (member.quantity_mw != 0.0) {
        throw std::invalid_argument("block " + std::to_string(block.block_id) +
                                    ": rejected offer '" + member.offer_id +
                                    "' has nonzero quantity");
      }
    }
    double phi = block_reliability(rels);
    double scale = std::max(std::abs(phi), 1e-300);
    if (std::abs(phi - block.reliability) > kReliabilityRelTol * scale) {
      throw std::invalid_argument("block " + std::to_string(block.block_id) +
                                  ": stated reliability disagrees with members");
    }
    phis.push_back(phi);
  }
  m.achieved_reliability = stack_reliability(phis);
  return m;
}

}  // namespace rap
