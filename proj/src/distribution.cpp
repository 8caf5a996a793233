#include "rap/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rap/monte_carlo.hpp"

namespace rap {

double AvailabilityDistribution::probability_at_least(double target_volume) const {
  double p = 0.0;
  for (auto [v, mass] : support) {
    if (v >= target_volume - 1e-9) p += mass;
  }
  return std::min(p, 1.0);
}

double AvailabilityDistribution::mass_sum() const {
  double s = 0.0;
  for (auto [v, mass] : support) s += mass;
  return s;
}

AvailabilityDistribution exact_distribution(const std::vector<PortfolioSlice>& slices,
                                            int max_offers) {
  if (static_cast<int>(slices.size()) > max_offers) {
    throw std::invalid_argument("portfolio has " + std::to_string(slices.size()) +
                                " slices, above the exact-convolution cap of " +
                                std::to_string(max_offers));
  }
  for (const PortfolioSlice& s : slices) {
    if (!(s.volume_mw >= 0.0)) {
      throw std::invalid_argument("slice volumes must be nonnegative");
    }
    if (!(s.reliability >= 0.0) || s.reliability > 1.0) {
      throw std::invalid_argument("slice reliability must lie in [0,1]");
    }
  }

  // Iterated convolution of two-point distributions, aggregating outcomes of
  // equal total volume as the support grows.
  std::map<double, double> mass{{0.0, 1.0}};
  for (const PortfolioSlice& s : slices) {
    std::map<double, double> next;
    for (auto [v, p] : mass) {
      next[v] += p * (1.0 - s.reliability);
      next[v + s.volume_mw] += p * s.reliability;
    }
    mass.swap(next);
  }

  AvailabilityDistribution dist;
  dist.support.assign(mass.begin(), mass.end());
  return dist;
}

std::vector<PortfolioSlice> portfolio_slices(const OfferBook& book,
                                             const ClearingResult& result) {
  std::vector<double> committed(book.size(), 0.0);
  for (const BlockAssignment& block : result.assignments) {
    for (const BlockMember& member : block.members) {
      if (!member.accepted) continue;
      auto idx = book.index_of(member.offer_id);
      if (!idx) {
        throw std::invalid_argument("result references unknown offer '" +
                                    member.offer_id + "'");
      }
      committed[*idx] += member.quantity_mw;
    }
  }
  std::vector<PortfolioSlice> slices;
  for (std::size_t i = 0; i < committed.size(); ++i) {
    if (committed[i] <= 0.0) continue;
    const Offer& o = book.at(i);
    slices.push_back({committed[i], o.reliability, o.source});
  }
  return slices;
}

double delivery_probability(const std::vector<PortfolioSlice>& slices,
                            double target_volume,
                            const AvailabilityModel& model,
                            const DeliveryOptions& opts) {
  if (target_volume <= 0.0) return 1.0;
  if (model.kind == AvailabilityKind::Pairwise) {
    throw std::invalid_argument(
        "pairwise correlation has no generative model; it is honored in the "
        "engine's constraint weighting only");
  }
  if (model.kind == AvailabilityKind::Independence &&
      static_cast<int>(slices.size()) <= opts.exact_cap) {
    return exact_distribution(slices, opts.exact_cap)
        .probability_at_least(target_volume);
  }
  return monte_carlo(slices, model, target_volume, opts.samples, opts.seed,
                     opts.workers)
      .estimate;
}

}  // namespace rap
