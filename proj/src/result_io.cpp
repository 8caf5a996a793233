#include "rap/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rap {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json offers_json(const OfferBook& book) {
  ordered_json arr = ordered_json::array();
  for (const Offer& o : book.offers()) {
    arr.push_back({{"id", o.id},
                   {"volume_mw", o.volume_mw},
                   {"reliability", o.reliability},
                   {"price_per_mw", o.price_per_mw},
                   {"source", o.source}});
  }
  return arr;
}

}  // namespace

std::string result_to_json(const ProblemInstance& inst,
                           const ClearingResult& result) {
  ordered_json j;
  j["formulation"] = std::string(formulation_name(inst.formulation));
  j["status"] = std::string(solve_status_name(result.stats.status));
  j["reliability_shortfall"] = result.reliability_shortfall;

  ordered_json req;
  req["target_volume_mw"] = inst.requirement.target_volume_mw;
  req["target_reliability"] = inst.requirement.target_reliability;
  req["min_block_volume_mw"] = inst.requirement.min_block_volume_mw;
  req["block_count"] = inst.requirement.block_count;
  req["big_m"] = inst.big_m;
  j["requirement"] = std::move(req);

  ordered_json params = ordered_json::object();
  if (formulation_has_linear_constraints(inst.formulation)) {
    params["psi"] = inst.psi;
  }
  if (inst.formulation == Formulation::UniformE) {
    params["uniform_offer_reliability"] = *inst.params.uniform_offer_reliability;
    params["min_offers_per_block"] = inst.min_offers_per_block;
  }
  if (inst.formulation == Formulation::CorrelatedF) {
    params["correlation"] = inst.params.correlation;
  }
  if (inst.formulation == Formulation::UnawareBenchmark) {
    params["benchmark_threshold"] = inst.benchmark_threshold;
  }
  j["parameters"] = std::move(params);

  j["offers"] = offers_json(inst.offers);

  ordered_json blocks = ordered_json::array();
  for (const BlockAssignment& block : result.assignments) {
    ordered_json b;
    b["block"] = block.block_id;
    b["volume_mw"] = block.volume_mw;
    b["reliability"] = block.reliability;
    ordered_json members = ordered_json::array();
    for (const BlockMember& m : block.members) {
      members.push_back({{"id", m.offer_id},
                         {"accepted", m.accepted},
                         {"quantity_mw", m.quantity_mw}});
    }
    b["members"] = std::move(members);
    blocks.push_back(std::move(b));
  }
  j["assignments"] = std::move(blocks);

  j["total_cost"] = result.total_cost;
  j["total_volume_mw"] = result.total_volume_mw;
  j["achieved_reliability"] = result.achieved_reliability;

  ordered_json solver;
  solver["nodes"] = result.stats.nodes;
  solver["lp_iterations"] = result.stats.lp_iterations;
  solver["lower_bound"] = result.stats.lower_bound;
  solver["workers"] = result.stats.workers;
  j["solver"] = std::move(solver);

  return j.dump(2) + "\n";
}

void write_result_json(const std::string& path, const ProblemInstance& inst,
                       const ClearingResult& result) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  os << result_to_json(inst, result);
}

LoadedResult read_result_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }

  std::vector<Offer> offers;
  for (const auto& o : j.at("offers")) {
    offers.push_back({o.at("id").get<std::string>(), o.at("volume_mw").get<double>(),
                      o.at("reliability").get<double>(),
                      o.at("price_per_mw").get<double>(),
                      o.value("source", std::string("unspecified"))});
  }

  Requirement req;
  const auto& rj = j.at("requirement");
  req.target_volume_mw = rj.at("target_volume_mw").get<double>();
  req.target_reliability = rj.at("target_reliability").get<double>();
  req.min_block_volume_mw = rj.at("min_block_volume_mw").get<double>();
  req.block_count = rj.at("block_count").get<int>();
  if (rj.contains("big_m")) req.big_m = rj["big_m"].get<double>();

  auto formulation = parse_formulation(j.at("formulation").get<std::string>());
  if (!formulation) {
    throw std::runtime_error(path + ": unknown formulation tag");
  }
  FormulationParams params;
  const auto& pj = j.at("parameters");
  if (pj.contains("psi")) params.psi = pj["psi"].get<double>();
  if (pj.contains("uniform_offer_reliability")) {
    params.uniform_offer_reliability = pj["uniform_offer_reliability"].get<double>();
  }
  if (pj.contains("correlation")) {
    params.correlation = pj["correlation"].get<std::vector<double>>();
  }
  if (pj.contains("benchmark_threshold")) {
    params.benchmark_threshold = pj["benchmark_threshold"].get<double>();
  }

  LoadedResult loaded{
      build_instance(OfferBook(std::move(offers)), req, *formulation, params), {}};

  ClearingResult& res = loaded.result;
  for (const auto& b : j.at("assignments")) {
    BlockAssignment block;
    block.block_id = b.at("block").get<int>();
    block.volume_mw = b.at("volume_mw").get<double>();
    block.reliability = b.at("reliability").get<double>();
    for (const auto& m : b.at("members")) {
      block.members.push_back({m.at("id").get<std::string>(),
                               m.at("accepted").get<bool>(),
                               m.at("quantity_mw").get<double>()});
    }
    res.assignments.push_back(std::move(block));
  }
  res.total_cost = j.at("total_cost").get<double>();
  res.total_volume_mw = j.at("total_volume_mw").get<double>();
  res.achieved_reliability = j.at("achieved_reliability").get<double>();
  res.reliability_shortfall = j.value("reliability_shortfall", false);
  res.formulation = static_cast<int>(*formulation);
  std::string status = j.at("status").get<std::string>();
  res.stats.status = status == "optimal"      ? SolveStatus::Optimal
                     : status == "gap_limited" ? SolveStatus::GapLimited
                                               : SolveStatus::Infeasible;
  const auto& sj = j.at("solver");
  res.stats.nodes = sj.at("nodes").get<long long>();
  res.stats.lp_iterations = sj.at("lp_iterations").get<long long>();
  res.stats.lower_bound = sj.at("lower_bound").get<double>();
  res.stats.workers = sj.at("workers").get<int>();
  return loaded;
}

std::string format_money(double v) {
  double rounded = std::round(v * 100.0) / 100.0;
  bool negative = rounded < 0.0;
  double a = std::abs(rounded);
  long long whole = static_cast<long long>(a);
  int cents = static_cast<int>(std::round((a - whole) * 100.0));
  if (cents == 100) {
    ++whole;
    cents = 0;
  }
  std::string digits = std::to_string(whole);
  std::string grouped;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count && count % 3 == 0) grouped.push_back(',');
    grouped.push_back(*it);
    ++count;
  }
  std::string out(grouped.rbegin(), grouped.rend());
  if (negative) out.insert(out.begin(), '-');
  if (cents != 0) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), ".%02d", cents);
    out += buf;
  }
  return out;
}

std::string format_percent(double fraction, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f %%", decimals, fraction * 100.0);
  return buf;
}

std::string render_result_table(const ClearingResult& result) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-22s %14s %10s %14s %10s\n", "Problem",
                "Cost", "Volume", "Reliability", "Time");
  os << line;
  std::string name(formulation_name(static_cast<Formulation>(result.formulation)));
  if (result.stats.status == SolveStatus::Infeasible && result.assignments.empty()) {
    std::snprintf(line, sizeof(line), "%-22s %14s %10s %14s %10s\n", name.c_str(),
                  "-", "-", "-", "(infeas.)");
    os << line;
    return os.str();
  }
  std::string cost = format_money(result.total_cost) + " $";
  char volume[32];
  std::snprintf(volume, sizeof(volume), "%.0f MW", result.total_volume_mw);
  std::string rel = format_percent(result.achieved_reliability, 3);
  char time[32];
  if (result.stats.status == SolveStatus::Infeasible) {
    std::snprintf(time, sizeof(time), "(infeas.)");
    rel = "*" + rel;
  } else {
    std::snprintf(time, sizeof(time), "%.3f s", result.stats.wall_seconds);
  }
  std::snprintf(line, sizeof(line), "%-22s %14s %10s %14s %10s\n", name.c_str(),
                cost.c_str(), volume, rel.c_str(), time);
  os << line;
  return os.str();
}

}  // namespace rap
