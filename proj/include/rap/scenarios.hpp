#pragma once

#include <string>
#include <vector>

#include "rap/cost_curves.hpp"
#include "rap/types.hpp"

namespace rap {

/// One offer per grid point, priced by the curve. Ids are "r01", "r02", ...
/// in grid order (zero-padded to the grid width).
std::vector<Offer> grid_offer_book(const std::vector<double>& reliability_grid,
                                   double volume_mw, const CostCurve& curve);

/// The 0.01..0.99 reliability grid of the national-scale case study.
std::vector<double> percent_grid();

struct Scenario {
  std::string name;
  OfferBook offers;
  Requirement requirement;
};

/// Published case-study instances:
///   "motivating"        six 100 MW offers, Q=100, Phi=0.99
///   "small-case"        six offers (duplicate id renamed 5a/5b), Q=40 MW,
///                       Phi=0.9995, Bmin=20 MW, two blocks
///   "large-case"        99-offer percent grid at 500 MW, linear alpha=100,
///                       Q=500, Phi=0.9995, five blocks of 100 MW
///   "block-sweep(S)"    large-case offers with Bmin=S and ceil(500/S) blocks
///   "cost-sweep(curve)" large-case offers repriced by the named curve
/// Throws std::invalid_argument for unknown names.
Scenario scenario(const std::string& name);

bool is_scenario_name(const std::string& name);

}  // namespace rap
