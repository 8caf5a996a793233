#include "rap/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rap/reliability.hpp"

namespace rap {

std::string_view formulation_name(Formulation f) {
  switch (f) {
    case Formulation::MinlpA: return "minlp-a";
    case Formulation::RminlpC: return "rminlp-c";
    case Formulation::MilpD: return "milp-d";
    case Formulation::UniformE: return "uniform-e";
    case Formulation::CorrelatedF: return "correlated-f";
    case Formulation::SourceRestrictedG: return "source-restricted-g";
    case Formulation::UnawareBenchmark: return "unaware";
  }
  return "unknown";
}

std::optional<Formulation> parse_formulation(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "minlp" || t == "minlp-a" || t == "a") return Formulation::MinlpA;
  if (t == "rminlp" || t == "rminlp-c" || t == "c") return Formulation::RminlpC;
  if (t == "milp" || t == "milp-d" || t == "d") return Formulation::MilpD;
  if (t == "uniform" || t == "uniform-e" || t == "e") return Formulation::UniformE;
  if (t == "correlated" || t == "correlated-f" || t == "f")
    return Formulation::CorrelatedF;
  if (t == "source-restricted" || t == "source-restricted-g" || t == "source" ||
      t == "g")
    return Formulation::SourceRestrictedG;
  if (t == "unaware" || t == "benchmark") return Formulation::UnawareBenchmark;
  return std::nullopt;
}

bool formulation_has_linear_constraints(Formulation f) {
  switch (f) {
    case Formulation::MilpD:
    case Formulation::UniformE:
    case Formulation::CorrelatedF:
    case Formulation::SourceRestrictedG:
      return true;
    default:
      return false;
  }
}

namespace {

bool needs_psi(Formulation f) {
  return formulation_has_linear_constraints(f);
}

// Smallest ceiling robust against ratios landing epsilon above an integer.
int ceil_with_slack(double x) {
  double c = std::ceil(x - 1e-9);
  return static_cast<int>(c < 1.0 ? 1.0 : c);
}

void validate_correlation(const std::vector<double>& g, std::size_t n) {
  if (g.size() != n * n) {
    throw std::invalid_argument("correlation matrix must be square over the offer book");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(g[i * n + i] - 1.0) > 1e-12) {
      throw std::invalid_argument("correlation matrix must have a unit diagonal");
    }
    for (std::size_t j = 0; j < n; ++j) {
      double v = g[i * n + j];
      if (!(v > 0.0) || v > 1.0) {
        throw std::invalid_argument(
            "correlation entries must lie in (0,1]; zero would nullify the "
            "log-reliability terms");
      }
      if (std::abs(v - g[j * n + i]) > 1e-12) {
        throw std::invalid_argument("correlation matrix must be symmetric");
      }
    }
  }
}

}  // namespace

ProblemInstance build_instance(OfferBook offers, Requirement requirement,
                               Formulation formulation,
                               FormulationParams params) {
  if (offers.empty()) throw std::invalid_argument("offer book is empty");
  requirement.validate();

  ProblemInstance inst;
  inst.requirement = requirement;
  inst.formulation = formulation;

  const std::size_t n = offers.size();
  inst.big_m = requirement.big_m.value_or(offers.max_volume());
  if (inst.big_m + 1e-9 < offers.max_volume()) {
    throw std::invalid_argument(
        "big-M must be at least the largest offered volume");
  }

  // Source tags, used by SourceRestrictedG and by the validator's
  // common-source availability model.
  inst.source_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& s = offers.at(i).source;
    auto it = std::find(inst.source_names.begin(), inst.source_names.end(), s);
    if (it == inst.source_names.end()) {
      inst.source_of[i] = static_cast<int>(inst.source_names.size());
      inst.source_names.push_back(s);
    } else {
      inst.source_of[i] = static_cast<int>(it - inst.source_names.begin());
    }
  }

  inst.eligible.assign(n, 1);
  inst.weight.resize(n);
  std::vector<double> gamma(n, 1.0);
  if (formulation == Formulation::CorrelatedF) {
    if (params.correlation.empty()) {
      throw std::invalid_argument("correlated clearing requires a correlation matrix");
    }
    validate_correlation(params.correlation, n);
    for (std::size_t i = 0; i < n; ++i) {
      double p = 1.0;
      for (std::size_t j = 0; j < n; ++j) p *= params.correlation[i * n + j];
      gamma[i] = p;
    }
  } else if (!params.correlation.empty()) {
    throw std::invalid_argument(
        "correlation matrix supplied for a formulation that ignores it");
  }
  for (std::size_t i = 0; i < n; ++i) {
    inst.weight[i] = gamma[i] * std::log1p(-offers.at(i).reliability);
  }
  inst.gamma = std::move(gamma);

  if (needs_psi(formulation)) {
    const double phi = requirement.target_reliability;
    const int bk = requirement.block_count;
    double psi = params.psi.value_or(uniform_block_reliability(phi, bk));
    if (!(psi > 0.0) || !(psi < 1.0)) {
      throw std::invalid_argument("block reliability floor must lie in (0,1)");
    }
    // Psi^bk >= Phi guarantees the system target; nudge the default up the
    // few ulps pow may have lost, reject genuinely insufficient overrides.
    while (std::pow(psi, bk) < phi && psi < 1.0) {
      double next = std::nextafter(psi, 1.0);
      if (std::pow(next, bk) < std::pow(psi, bk)) break;
      psi = next;
      if (params.psi && std::pow(psi, bk) < phi - 1e-9) break;
    }
    if (std::pow(psi, bk) < phi - 1e-9) {
      throw std::invalid_argument(
          "block reliability floor too low: psi^block_count misses the system target");
    }
    inst.psi = psi;
    inst.log_one_minus_psi = std::log1p(-psi);
  }

  switch (formulation) {
    case Formulation::UniformE: {
      if (!params.uniform_offer_reliability) {
        throw std::invalid_argument(
            "uniform clearing requires the per-block offer reliability R_b");
      }
      double rb = *params.uniform_offer_reliability;
      if (!(rb > 0.0) || rb >= 1.0) {
        throw std::invalid_argument("uniform offer reliability must lie in (0,1)");
      }
      inst.min_offers_per_block = ceil_with_slack(
          std::log1p(-inst.psi) / std::log1p(-rb));
      int eligible_count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        inst.eligible[i] = offers.at(i).reliability >= rb - 1e-12;
        eligible_count += inst.eligible[i];
      }
      if (eligible_count < inst.min_offers_per_block) {
        throw std::invalid_argument(
            "infeasible by construction: each block needs " +
            std::to_string(inst.min_offers_per_block) + " offers with R >= R_b but only " +
            std::to_string(eligible_count) + " qualify");
      }
      break;
    }
    case Formulation::MilpD:
    case Formulation::CorrelatedF: {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += inst.weight[i];
      if (total > inst.log_one_minus_psi + kLogSlack) {
        throw std::invalid_argument(
            "infeasible by construction: the block reliability floor is not "
            "achievable by any offer subset");
      }
      break;
    }
    case Formulation::SourceRestrictedG: {
      // Under one-offer-per-source the best a block can do is the strongest
      // offer of every source.
      std::vector<double> best(inst.source_names.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        int s = inst.source_of[i];
        best[s] = std::min(best[s], inst.weight[i]);
      }
      double total = 0.0;
      for (double w : best) total += w;
      if (total > inst.log_one_minus_psi + kLogSlack) {
        throw std::invalid_argument(
            "infeasible by construction: one offer per source cannot reach "
            "the block reliability floor");
      }
      break;
    }
    case Formulation::UnawareBenchmark: {
      double max_r = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        max_r = std::max(max_r, offers.at(i).reliability);
      }
      inst.benchmark_threshold = params.benchmark_threshold.value_or(max_r);
      if (inst.benchmark_threshold < 0.0 || inst.benchmark_threshold >= 1.0) {
        throw std::invalid_argument("benchmark threshold must lie in [0,1)");
      }
      break;
    }
    case Formulation::MinlpA:
    case Formulation::RminlpC:
      break;
  }

  inst.params = std::move(params);
  inst.offers = std::move(offers);
  return inst;
}

ProblemInstance build_source_restricted(const ProblemInstance& base) {
  FormulationParams p = base.params;
  p.correlation.clear();
  return build_instance(base.offers, base.requirement,
                        Formulation::SourceRestrictedG, std::move(p));
}

ProblemInstance build_correlation_adjusted(const ProblemInstance& base,
                                           std::vector<double> correlation) {
  FormulationParams p = base.params;
  p.correlation = std::move(correlation);
  return build_instance(base.offers, base.requirement,
                        Formulation::CorrelatedF, std::move(p));
}

}  // namespace rap
