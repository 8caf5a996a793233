#pragma once

// Deterministic random-instance corpus shared by the property tests and the
// acceptance suite. Uses a hand-rolled SplitMix64 stream so the corpus is
// identical across platforms and standard libraries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rap/cost_curves.hpp"
#include "rap/instance.hpp"

namespace corpus {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double next01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  int next_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// A random instance inside the enumeration cap (2-6 offers, 1-3 blocks,
// mixed cost curves). Returns nullopt when the draw is infeasible by
// construction for the requested formulation.
inline std::optional<rap::ProblemInstance> random_instance(std::uint64_t seed,
                                                           rap::Formulation form) {
  Rng rng(seed);
  int n = rng.next_int(2, 6);
  int bk = rng.next_int(1, 3);
  while (n * bk > 18) n = rng.next_int(2, 6);

  static const rap::CurveKind kinds[] = {
      rap::CurveKind::Linear, rap::CurveKind::Exponential, rap::CurveKind::Quadratic,
      rap::CurveKind::Cubic, rap::CurveKind::Logarithmic, rap::CurveKind::Constant};
  rap::CostCurve curve{kinds[rng.next_int(0, 5)], 50.0 + 150.0 * rng.next01()};

  static const char* sources[] = {"wind", "solar", "hydro", "demand"};
  std::vector<rap::Offer> offers;
  double total_volume = 0.0;
  for (int i = 0; i < n; ++i) {
    rap::Offer o;
    o.id = "o" + std::to_string(i + 1);
    o.volume_mw = 5.0 + 95.0 * rng.next01();
    o.reliability = 0.02 + 0.975 * rng.next01();
    o.price_per_mw = rap::price(curve, o.reliability);
    o.source = sources[rng.next_int(0, 3)];
    total_volume += o.volume_mw;
    offers.push_back(std::move(o));
  }

  rap::Requirement req;
  req.target_volume_mw = total_volume * (0.15 + 0.5 * rng.next01());
  req.target_reliability = 0.70 + 0.2999 * rng.next01();
  req.block_count = bk;
  req.min_block_volume_mw =
      rng.next01() < 0.4 ? 0.0
                         : req.target_volume_mw / bk * (0.3 + 0.5 * rng.next01());

  rap::FormulationParams params;
  try {
    return rap::build_instance(rap::OfferBook(offers), req, form, params);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // infeasible by construction for this draw
  }
}

}  // namespace corpus
