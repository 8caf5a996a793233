#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rap/scenarios.hpp"
#include "rap/solvers.hpp"
#include "rap/verify.hpp"

using namespace rap;

namespace {

ProblemInstance small(Formulation f, FormulationParams p = {}) {
  Scenario s = scenario("small-case");
  return build_instance(s.offers, s.requirement, f, std::move(p));
}

}  // namespace

TEST_CASE("enumeration reproduces the exact small-case clearing") {
  auto res = solve_exact_enumeration(small(Formulation::MinlpA));
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == doctest::Approx(9320.0).epsilon(1e-9));
  CHECK(res.total_volume_mw == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(res.achieved_reliability == doctest::Approx(0.99950004).epsilon(1e-7));
  CHECK(verify_solution(small(Formulation::MinlpA), res).passed);
}

TEST_CASE("enumeration under the relaxed block floor costs 9,420") {
  auto res = solve_exact_enumeration(small(Formulation::MilpD));
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == doctest::Approx(9420.0).epsilon(1e-9));
  CHECK(res.total_volume_mw == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("enumeration cap is enforced") {
  Scenario s = scenario("large-case");
  auto inst = build_instance(s.offers, s.requirement, Formulation::MinlpA);
  CHECK_THROWS_AS((void)solve_exact_enumeration(inst), std::invalid_argument);
}

TEST_CASE("degenerate zero requirement clears empty") {
  Scenario s = scenario("small-case");
  s.requirement.target_volume_mw = 0.0;
  s.requirement.min_block_volume_mw = 0.0;
  auto inst = build_instance(s.offers, s.requirement, Formulation::MinlpA);
  auto res = solve_exact_enumeration(inst);
  CHECK(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == 0.0);
  CHECK(res.assignments.empty());
  CHECK(res.achieved_reliability == 1.0);
}

TEST_CASE("branch and bound matches the relaxed optimum") {
  auto res = solve_branch_and_bound(small(Formulation::MilpD));
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == doctest::Approx(9420.0).epsilon(1e-9));
  CHECK(res.total_volume_mw == doctest::Approx(100.0).epsilon(1e-9));
  auto rep = verify_solution(small(Formulation::MilpD), res);
  CHECK(rep.passed);
  // The relaxed solution overshoots the exact joint target.
  CHECK(rep.exact_joint_reliability >= 0.9995);
}

TEST_CASE("rminlp equals the exact enumeration on the small case") {
  auto res = solve_rminlp(small(Formulation::RminlpC));
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == doctest::Approx(9320.0).epsilon(1e-9));
  CHECK(res.total_volume_mw == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(res.achieved_reliability == doctest::Approx(0.99950004).epsilon(1e-7));
}

TEST_CASE("rminlp boundary feasibility: exact equality is feasible") {
  // One block, offers 0.99 and 0.95: 1 - 0.01*0.05 = 0.9995 exactly.
  OfferBook book({{"a", 50, 0.99, 10, ""}, {"b", 50, 0.95, 9, ""}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.9995;
  req.block_count = 1;
  auto inst = build_instance(book, req, Formulation::RminlpC);
  auto res = solve_rminlp(inst);
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.total_cost == doctest::Approx(40 * 19.0));
  CHECK(res.achieved_reliability == doctest::Approx(0.9995).epsilon(1e-9));
}

TEST_CASE("rminlp proves infeasibility when the target is out of reach") {
  OfferBook book({{"a", 50, 0.99, 10, ""}, {"b", 50, 0.99, 9, ""}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.999999;  // best stack is 1 - 1e-4
  req.block_count = 1;
  auto inst = build_instance(book, req, Formulation::RminlpC);
  CHECK(solve_rminlp(inst).stats.status == SolveStatus::Infeasible);
}

TEST_CASE("all-zero reliabilities cannot meet a positive floor") {
  OfferBook book({{"a", 50, 0.0, 1, ""}, {"b", 50, 0.0, 1, ""}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.5;
  req.block_count = 1;
  CHECK_THROWS_AS((void)build_instance(book, req, Formulation::MilpD),
                  std::invalid_argument);
}

TEST_CASE("unaware benchmark clears the two reliable offers and misses") {
  auto res = solve_unaware_benchmark(small(Formulation::UnawareBenchmark));
  CHECK(res.stats.status == SolveStatus::Infeasible);
  CHECK(res.reliability_shortfall);
  CHECK(res.total_cost == doctest::Approx(3960.0).epsilon(1e-12));
  CHECK(res.total_volume_mw == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(res.achieved_reliability == doctest::Approx(0.9801).epsilon(1e-9));
  // Cost and volume survive verification; the reliability violation is the
  // expected finding.
  auto rep = verify_solution(small(Formulation::UnawareBenchmark), res);
  CHECK(!rep.passed);
  bool joint_flagged = false;
  bool cost_flagged = false;
  for (const auto& v : rep.violations) {
    if (v.code == "joint_reliability") joint_flagged = true;
    if (v.code == "objective") cost_flagged = true;
  }
  CHECK(joint_flagged);
  CHECK(!cost_flagged);
}

TEST_CASE("unaware benchmark with threshold zero clears the cheapest cover") {
  Scenario s = scenario("motivating");
  FormulationParams p;
  p.benchmark_threshold = 0.0;
  auto inst = build_instance(s.offers, s.requirement,
                             Formulation::UnawareBenchmark, p);
  auto res = solve_unaware_benchmark(inst);
  // Cheapest offer is "6" at 10 $/MW covering the full 100 MW.
  CHECK(res.total_cost == doctest::Approx(1000.0));
  CHECK(res.assignments.size() == 1);
  CHECK(res.assignments[0].members[0].offer_id == "6");
}

TEST_CASE("unaware benchmark reports insufficient qualifying volume") {
  OfferBook book({{"a", 10, 0.9, 5, ""}});
  Requirement req;
  req.target_volume_mw = 50;
  req.target_reliability = 0.5;
  req.block_count = 1;
  auto inst = build_instance(book, req, Formulation::UnawareBenchmark);
  auto res = solve_unaware_benchmark(inst);
  CHECK(res.stats.status == SolveStatus::Infeasible);
  CHECK(res.assignments.empty());
}

TEST_CASE("solver results are invariant to the worker count") {
  auto inst = small(Formulation::MilpD);
  SolveOptions serial;
  serial.workers = 1;
  SolveOptions parallel;
  parallel.workers = 4;
  auto a = solve_branch_and_bound(inst, serial);
  auto b = solve_branch_and_bound(inst, parallel);
  CHECK(a.total_cost == b.total_cost);
  CHECK(a.stats.nodes == b.stats.nodes);
  REQUIRE(a.assignments.size() == b.assignments.size());
  for (std::size_t k = 0; k < a.assignments.size(); ++k) {
    CHECK(a.assignments[k].volume_mw == b.assignments[k].volume_mw);
    REQUIRE(a.assignments[k].members.size() == b.assignments[k].members.size());
    for (std::size_t j = 0; j < a.assignments[k].members.size(); ++j) {
      CHECK(a.assignments[k].members[j].offer_id ==
            b.assignments[k].members[j].offer_id);
      CHECK(a.assignments[k].members[j].quantity_mw ==
            b.assignments[k].members[j].quantity_mw);
    }
  }

  auto ea = solve_exact_enumeration(inst, serial);
  auto eb = solve_exact_enumeration(inst, parallel);
  CHECK(ea.total_cost == eb.total_cost);
  CHECK(ea.stats.nodes == eb.stats.nodes);
}

TEST_CASE("node limit yields a gap-limited result with a lower bound") {
  auto inst = small(Formulation::MilpD);
  SolveOptions opts;
  opts.node_limit = 1;
  auto res = solve_branch_and_bound(inst, opts);
  CHECK(res.stats.status == SolveStatus::GapLimited);
  CHECK(res.stats.lower_bound <= 9420.0 + 1e-9);
}
