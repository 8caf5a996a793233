#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rap/types.hpp"

namespace rap {

// Clearing problem variants. MinlpA is the exact bilinear problem, RminlpC
// its log reformulation (identical feasible set), MilpD the per-block
// reliability-floor relaxation, UniformE the uniform-offer-count
// simplification, CorrelatedF the cross-correlation weighting of MilpD,
// SourceRestrictedG MilpD plus one-offer-per-source-per-block rows, and
// UnawareBenchmark the conventional merit-order clearing.
enum class Formulation {
  MinlpA,
  RminlpC,
  MilpD,
  UniformE,
  CorrelatedF,
  SourceRestrictedG,
  UnawareBenchmark,
};

std::string_view formulation_name(Formulation f);
std::optional<Formulation> parse_formulation(std::string_view text);
bool formulation_has_linear_constraints(Formulation f);

struct FormulationParams {
  // Per-block reliability floor Psi; defaults to Phi^(1/block_count) for
  // MilpD/UniformE/CorrelatedF/SourceRestrictedG.
  std::optional<double> psi;
  // Uniform per-block offer reliability R_b (UniformE only).
  std::optional<double> uniform_offer_reliability;
  // Cross-correlation matrix, row-major n*n over offer-book order
  // (CorrelatedF only); entries in (0,1], symmetric, unit diagonal.
  std::vector<double> correlation;
  // Minimum reliability an offer needs to clear in the unaware benchmark;
  // defaults to the highest reliability in the book.
  std::optional<double> benchmark_threshold;
};

/// A validated clearing problem. `weight[i]` carries the coefficient of
/// z_{i,b} in the linearized block-reliability rows: log(1-R_i), scaled by
/// the offer's correlation product under CorrelatedF.
struct ProblemInstance {
  OfferBook offers;
  Requirement requirement;
  Formulation formulation = Formulation::MilpD;
  FormulationParams params;

  double big_m = 0.0;
  double psi = 0.0;                    // resolved floor (0 for A/C/benchmark)
  double log_one_minus_psi = 0.0;      // rhs of the Psi rows
  std::vector<double> weight;          // log(1-R_i), correlation-scaled for F
  std::vector<double> gamma;           // prod_j rho_{i,j}; all ones outside F
  std::vector<char> eligible;          // per offer; UniformE floors R_b
  int min_offers_per_block = 0;        // n_min, UniformE
  std::vector<int> source_of;          // per offer, index into source_names
  std::vector<std::string> source_names;
  double benchmark_threshold = 0.0;

  int num_offers() const { return static_cast<int>(offers.size()); }
  int num_blocks() const { return requirement.block_count; }
  long long binaries() const {
    return static_cast<long long>(offers.size()) * requirement.block_count;
  }
};

/// Validates offers + requirement against the formulation, resolves defaults
/// (Psi, big-M, benchmark threshold, n_min) and detects
/// infeasibility-by-construction (Psi unachievable by any offer subset,
/// UniformE block quota exceeding the eligible offer count).
/// Throws std::invalid_argument.
ProblemInstance build_instance(OfferBook offers, Requirement requirement,
                               Formulation formulation,
                               FormulationParams params = {});

/// Rebuilds `base` as the source-restricted problem: at most one offer per
/// source in every block.
ProblemInstance build_source_restricted(const ProblemInstance& base);

/// Rebuilds `base` with block-reliability coefficients scaled by each
/// offer's correlation product prod_j rho_{i,j}. An all-ones matrix
/// reproduces the unadjusted MilpD problem exactly.
ProblemInstance build_correlation_adjusted(const ProblemInstance& base,
                                           std::vector<double> correlation);

}  // namespace rap
