#include "rap/scenarios.hpp"

#include <cstdio>
#include <stdexcept>

namespace rap {

std::vector<double> percent_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<Offer> grid_offer_book(const std::vector<double>& reliability_grid,
                                   double volume_mw, const CostCurve& curve) {
  if (!(volume_mw > 0.0)) {
    throw std::invalid_argument("grid offer volume must be positive");
  }
  int width = 1;
  for (std::size_t n = reliability_grid.size(); n >= 10; n /= 10) ++width;
  std::vector<Offer> offers;
  offers.reserve(reliability_grid.size());
  for (std::size_t k = 0; k < reliability_grid.size(); ++k) {
    double r = reliability_grid[k];
    char id[24];
    std::snprintf(id, sizeof(id), "r%0*zu", width, k + 1);
    offers.push_back({id, volume_mw, r, price(curve, r), "unspecified"});
  }
  return offers;
}

namespace {

Scenario motivating() {
  // Table of reliability-sorted 100 MW offers behind the joint-availability
  // example; no block structure, one block covers the requirement.
  std::vector<Offer> offers{
      {"1", 100.0, 0.99, 100.0, "unspecified"},
      {"2", 100.0, 0.98, 55.0, "unspecified"},
      {"3", 100.0, 0.95, 40.0, "unspecified"},
      {"4", 100.0, 0.90, 25.0, "unspecified"},
      {"5", 100.0, 0.70, 11.0, "unspecified"},
      {"6", 100.0, 0.70, 10.0, "unspecified"},
  };
  Requirement req;
  req.target_volume_mw = 100.0;
  req.target_reliability = 0.99;
  req.min_block_volume_mw = 0.0;
  req.block_count = 1;
  return {"motivating", OfferBook(std::move(offers)), req};
}

Scenario small_case() {
  // The published table lists offer id 5 twice; the duplicates ingest as
  // 5a/5b with identical attributes.
  std::vector<Offer> offers{
      {"1", 40.0, 0.80, 80.0, "unspecified"},
      {"2", 30.0, 0.90, 90.0, "unspecified"},
      {"3", 30.0, 0.95, 95.0, "unspecified"},
      {"4", 30.0, 0.98, 98.0, "unspecified"},
      {"5a", 20.0, 0.99, 99.0, "unspecified"},
      {"5b", 20.0, 0.99, 99.0, "unspecified"},
  };
  Requirement req;
  req.target_volume_mw = 40.0;
  req.target_reliability = 0.9995;
  req.min_block_volume_mw = 20.0;
  req.block_count = derive_block_count(40.0, 20.0);
  return {"small-case", OfferBook(std::move(offers)), req};
}

Scenario large_case(const CostCurve& curve, double block_size) {
  Requirement req;
  req.target_volume_mw = 500.0;
  req.target_reliability = 0.9995;
  req.min_block_volume_mw = block_size;
  req.block_count = derive_block_count(500.0, block_size);
  return {"large-case", OfferBook(grid_offer_book(percent_grid(), 500.0, curve)),
          req};
}

// "name(arg)" -> arg, empty when absent.
std::string param_of(const std::string& name) {
  auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')') return {};
  return name.substr(open + 1, name.size() - open - 2);
}

}  // namespace

bool is_scenario_name(const std::string& name) {
  if (name == "motivating" || name == "small-case" || name == "large-case") {
    return true;
  }
  return name.rfind("block-sweep(", 0) == 0 || name.rfind("cost-sweep(", 0) == 0;
}

Scenario scenario(const std::string& name) {
  if (name == "motivating") return motivating();
  if (name == "small-case") return small_case();
  if (name == "large-case") {
    return large_case({CurveKind::Linear, 100.0}, 100.0);
  }
  if (name.rfind("block-sweep(", 0) == 0) {
    std::string arg = param_of(name);
    double size = std::strtod(arg.c_str(), nullptr);
    if (!(size > 0.0)) {
      throw std::invalid_argument("block-sweep needs a positive block size: " + name);
    }
    Scenario s = large_case({CurveKind::Linear, 100.0}, size);
    s.name = name;
    return s;
  }
  if (name.rfind("cost-sweep(", 0) == 0) {
    auto kind = parse_curve(param_of(name));
    if (!kind) {
      throw std::invalid_argument("cost-sweep needs a curve name: " + name);
    }
    Scenario s = large_case({*kind, 100.0}, 100.0);
    s.name = name;
    return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace rap
