#include "rap/milp_model.hpp"

#include <stdexcept>

namespace rap {

MilpRelaxation build_relaxation(const ProblemInstance& inst) {
  if (!formulation_has_linear_constraints(inst.formulation)) {
    throw std::invalid_argument(
        std::string("formulation ") + std::string(formulation_name(inst.formulation)) +
        " has nonlinear reliability constraints; use milp-d, uniform-e, "
        "correlated-f or source-restricted-g");
  }
  const int n = inst.num_offers();
  const int bk = inst.num_blocks();
  const Requirement& req = inst.requirement;

  MilpRelaxation rel;
  rel.num_offers = n;
  rel.num_blocks = bk;
  lp::Model& m = rel.model;

  rel.q_block_offset = 0;
  for (int b = 0; b < bk; ++b) {
    m.add_variable("q_b" + std::to_string(b + 1), req.min_block_volume_mw,
                   lp::kInf, 0.0);
  }
  rel.q_offer_offset = m.num_vars();
  for (int b = 0; b < bk; ++b) {
    for (int i = 0; i < n; ++i) {
      m.add_variable("q_i" + std::to_string(i + 1) + "_b" + std::to_string(b + 1),
                     0.0, lp::kInf, inst.offers.at(i).price_per_mw);
    }
  }
  rel.z_offset = m.num_vars();
  for (int b = 0; b < bk; ++b) {
    for (int i = 0; i < n; ++i) {
      double ub = inst.eligible[i] ? 1.0 : 0.0;
      m.add_variable("z_i" + std::to_string(i + 1) + "_b" + std::to_string(b + 1),
                     0.0, ub, 0.0);
    }
  }

  // q_b - q_{i,b} + M z_{i,b} <= M
  for (int b = 0; b < bk; ++b) {
    for (int i = 0; i < n; ++i) {
      lp::Row row;
      row.name = "bigm_i" + std::to_string(i + 1) + "_b" + std::to_string(b + 1);
      row.terms = {{rel.q_block_offset + b, 1.0},
                   {rel.q_index(i, b), -1.0},
                   {rel.z_index(i, b), inst.big_m}};
      row.sense = lp::Sense::LE;
      row.rhs = inst.big_m;
      m.add_row(std::move(row));
    }
  }

  {
    lp::Row row;
    row.name = "system_volume";
    for (int b = 0; b < bk; ++b) row.terms.emplace_back(rel.q_block_offset + b, 1.0);
    row.sense = lp::Sense::GE;
    row.rhs = req.target_volume_mw;
    m.add_row(std::move(row));
  }

  for (int i = 0; i < n; ++i) {
    lp::Row row;
    row.name = "capacity_i" + std::to_string(i + 1);
    for (int b = 0; b < bk; ++b) row.terms.emplace_back(rel.q_index(i, b), 1.0);
    row.sense = lp::Sense::LE;
    row.rhs = inst.offers.at(i).volume_mw;
    m.add_row(std::move(row));
  }

  // Block reliability: sum_i z_{i,b} log(1-R_i) <= log(1-Psi).
  for (int b = 0; b < bk; ++b) {
    lp::Row row;
    row.name = "reliability_b" + std::to_string(b + 1);
    for (int i = 0; i < n; ++i) {
      if (inst.eligible[i]) row.terms.emplace_back(rel.z_index(i, b), inst.weight[i]);
    }
    row.sense = lp::Sense::LE;
    row.rhs = inst.log_one_minus_psi;
    if (inst.formulation != Formulation::UniformE) m.add_row(std::move(row));
  }

  if (inst.formulation == Formulation::UniformE) {
    const double rb = *inst.params.uniform_offer_reliability;
    for (int b = 0; b < bk; ++b) {
      lp::Row count;
      count.name = "min_offers_b" + std::to_string(b + 1);
      for (int i = 0; i < n; ++i) {
        if (inst.eligible[i]) count.terms.emplace_back(rel.z_index(i, b), 1.0);
      }
      count.sense = lp::Sense::GE;
      count.rhs = static_cast<double>(inst.min_offers_per_block);
      m.add_row(std::move(count));
    }
    // Acceptance floor (8b): R_b q_{i,b} - z_{i,b} >= Psi - 1.
    for (int b = 0; b < bk; ++b) {
      for (int i = 0; i < n; ++i) {
        if (!inst.eligible[i]) continue;
        lp::Row row;
        row.name = "floor_i" + std::to_string(i + 1) + "_b" + std::to_string(b + 1);
        row.terms = {{rel.q_index(i, b), rb}, {rel.z_index(i, b), -1.0}};
        row.sense = lp::Sense::GE;
        row.rhs = inst.psi - 1.0;
        m.add_row(std::move(row));
      }
    }
  }

  if (inst.formulation == Formulation::SourceRestrictedG) {
    for (std::size_t s = 0; s < inst.source_names.size(); ++s) {
      for (int b = 0; b < bk; ++b) {
        lp::Row row;
        row.name = "source_" + inst.source_names[s] + "_b" + std::to_string(b + 1);
        for (int i = 0; i < n; ++i) {
          if (inst.source_of[i] == static_cast<int>(s)) {
            row.terms.emplace_back(rel.z_index(i, b), 1.0);
          }
        }
        if (row.terms.size() > 1) {
          row.sense = lp::Sense::LE;
          row.rhs = 1.0;
          m.add_row(std::move(row));
        }
      }
    }
  }

  return rel;
}

}  // namespace rap
