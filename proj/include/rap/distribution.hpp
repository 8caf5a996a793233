#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rap/types.hpp"

namespace rap {

/// One independent deliverable slice of a portfolio: the offer's total
/// committed quantity and its marginal reliability.
struct PortfolioSlice {
  double volume_mw = 0.0;
  double reliability = 0.0;
  std::string source = "unspecified";
};

enum class AvailabilityKind { Independence, CommonSource, Pairwise };

/// Availability model for ex-post validation. Under CommonSource an offer
/// delivers iff its source-wide shock succeeds and an idiosyncratic draw of
/// probability R_i / shock succeeds, reproducing the marginal R_i (which
/// requires R_i <= shock probability). Pairwise correlation matrices have no
/// generative model in the clearing framework and are rejected for sampling.
struct AvailabilityModel {
  AvailabilityKind kind = AvailabilityKind::Independence;
  std::map<std::string, double> source_shock;  // per source, in (0,1]

  static AvailabilityModel independence() { return {}; }
  static AvailabilityModel common_source(std::map<std::string, double> shocks) {
    return {AvailabilityKind::CommonSource, std::move(shocks)};
  }
};

/// Exact probability mass over total deliverable volume.
struct AvailabilityDistribution {
  std::vector<std::pair<double, double>> support;  // (volume, mass), ascending
  AvailabilityKind model = AvailabilityKind::Independence;

  double probability_at_least(double target_volume) const;
  double mass_sum() const;
};

/// Iterated convolution of the offers' two-point distributions under
/// independence. Throws above `max_offers` (default 30).
AvailabilityDistribution exact_distribution(const std::vector<PortfolioSlice>& slices,
                                            int max_offers = 30);

/// Per-offer committed totals of a clearing result.
std::vector<PortfolioSlice> portfolio_slices(const OfferBook& book,
                                             const ClearingResult& result);

struct DeliveryOptions {
  int exact_cap = 30;           // switch to sampling above this many slices
  long long samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// P(deliverable volume >= target) under the model: exact convolution when
/// the portfolio is small and the model is independence, Monte Carlo
/// otherwise.
double delivery_probability(const std::vector<PortfolioSlice>& slices,
                            double target_volume,
                            const AvailabilityModel& model,
                            const DeliveryOptions& opts = {});

}  // namespace rap
