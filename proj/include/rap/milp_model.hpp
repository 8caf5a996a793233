#pragma once

#include <string>
#include <vector>

#include "rap/instance.hpp"
#include "rap/simplex.hpp"

namespace rap {

/// LP shape of a linear-constraint formulation (MilpD / UniformE /
/// CorrelatedF / SourceRestrictedG) with the binaries relaxed to [0,1].
/// Variable layout: q_b for b=0..bk-1, then q_{i,b}, then z_{i,b}, both
/// indexed b*n+i beyond their offsets.
struct MilpRelaxation {
  lp::Model model;
  int q_block_offset = 0;
  int q_offer_offset = 0;
  int z_offset = 0;
  int num_offers = 0;
  int num_blocks = 0;

  int z_index(int offer, int block) const {
    return z_offset + block * num_offers + offer;
  }
  int q_index(int offer, int block) const {
    return q_offer_offset + block * num_offers + offer;
  }
};

/// Builds the relaxation of a linear-constraint instance: big-M acceptance
/// rows, system volume row, per-offer capacity rows, block reliability rows
/// with log(1-R) coefficients, plus the formulation's extra rows (offer
/// count and acceptance floors for UniformE, one-per-source rows for
/// SourceRestrictedG). Throws for nonlinear formulations.
MilpRelaxation build_relaxation(const ProblemInstance& inst);

}  // namespace rap
