#include <doctest.h>

#include "rap/scenarios.hpp"
#include "rap/solvers.hpp"
#include "rap/verify.hpp"

using namespace rap;

TEST_CASE("source restriction admits at most one offer per source and block") {
  OfferBook book({{"w1", 50, 0.90, 10, "wind"},
                  {"w2", 50, 0.92, 11, "wind"},
                  {"s1", 50, 0.90, 12, "solar"},
                  {"h1", 50, 0.85, 9, "hydro"}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.95;
  req.block_count = 1;
  FormulationParams p;
  p.psi = 0.995;

  auto base = build_instance(book, req, Formulation::MilpD, p);
  auto g = build_source_restricted(base);
  auto res = solve_branch_and_bound(g);
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  int wind_members = 0;
  for (const auto& m : res.assignments[0].members) {
    if (m.offer_id[0] == 'w') ++wind_members;
  }
  CHECK(wind_members <= 1);
  CHECK(verify_solution(g, res).passed);

  // The unrestricted problem prefers the two cheap wind offers.
  auto unrestricted = solve_branch_and_bound(base);
  CHECK(unrestricted.total_cost <= res.total_cost + 1e-9);
}

TEST_CASE("distinct sources make the restriction vacuous") {
  OfferBook book({{"a", 50, 0.90, 10, "wind"},
                  {"b", 50, 0.92, 11, "solar"},
                  {"c", 50, 0.90, 12, "hydro"},
                  {"d", 50, 0.85, 9, "demand"}});
  Requirement req;
  req.target_volume_mw = 60;
  req.target_reliability = 0.95;
  req.block_count = 2;
  FormulationParams p;
  auto d_inst = build_instance(book, req, Formulation::MilpD, p);
  auto g_inst = build_source_restricted(d_inst);
  auto d_res = solve_branch_and_bound(d_inst);
  auto g_res = solve_branch_and_bound(g_inst);
  REQUIRE(d_res.stats.status == SolveStatus::Optimal);
  REQUIRE(g_res.stats.status == SolveStatus::Optimal);
  CHECK(d_res.total_cost == doctest::Approx(g_res.total_cost).epsilon(1e-9));
}

TEST_CASE("all-ones correlation reproduces the unadjusted clearing") {
  Scenario s = scenario("small-case");
  auto d_inst = build_instance(s.offers, s.requirement, Formulation::MilpD);
  std::vector<double> ones(6 * 6, 1.0);
  auto f_inst = build_correlation_adjusted(d_inst, ones);
  auto d_res = solve_branch_and_bound(d_inst);
  auto f_res = solve_branch_and_bound(f_inst);
  REQUIRE(f_res.stats.status == SolveStatus::Optimal);
  CHECK(f_res.total_cost == doctest::Approx(d_res.total_cost).epsilon(1e-12));
  auto rep = verify_solution(f_inst, f_res);
  CHECK(rep.passed);
  CHECK(rep.weighted_joint_checked);
}

TEST_CASE("correlation discounting forces stronger blocks") {
  // Two highly correlated strong offers stop sufficing once their mutual
  // correlation discounts their contributions.
  OfferBook book({{"a", 50, 0.99, 10, "wind"},
                  {"b", 50, 0.95, 9, "wind"},
                  {"c", 50, 0.90, 5, "solar"}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.9995;
  req.block_count = 1;
  auto d_inst = build_instance(book, req, Formulation::MilpD);
  auto d_res = solve_branch_and_bound(d_inst);
  REQUIRE(d_res.stats.status == SolveStatus::Optimal);
  CHECK(d_res.assignments[0].members.size() == 2);  // {a,b} reaches 0.9995

  std::vector<double> corr{1.0, 0.6, 1.0,
                           0.6, 1.0, 1.0,
                           1.0, 1.0, 1.0};
  auto f_inst = build_correlation_adjusted(d_inst, corr);
  auto f_res = solve_branch_and_bound(f_inst);
  REQUIRE(f_res.stats.status == SolveStatus::Optimal);
  CHECK(f_res.total_cost > d_res.total_cost);
  CHECK(f_res.assignments[0].members.size() >= 3);
}

TEST_CASE("uniform-e enforces the per-block offer quota") {
  OfferBook book({{"a", 50, 0.90, 10, ""},
                  {"b", 50, 0.91, 11, ""},
                  {"c", 50, 0.92, 12, ""},
                  {"d", 50, 0.95, 13, ""},
                  {"e", 50, 0.40, 1, ""}});
  Requirement req;
  req.target_volume_mw = 50;
  req.target_reliability = 0.99;
  req.block_count = 1;
  FormulationParams p;
  p.psi = 0.999;  // needs ceil(ln(1e-3)/ln(0.1)) = 3 offers at R_b = 0.9
  p.uniform_offer_reliability = 0.9;
  auto inst = build_instance(book, req, Formulation::UniformE, p);
  CHECK(inst.min_offers_per_block == 3);

  auto res = solve_branch_and_bound(inst);
  REQUIRE(res.stats.status == SolveStatus::Optimal);
  CHECK(res.assignments[0].members.size() == 3);
  // Cheapest three eligible offers a, b, c; the R=0.4 offer is barred.
  for (const auto& m : res.assignments[0].members) {
    CHECK(m.offer_id != "e");
    // Acceptance floor (8b): quantities at least psi/R_b above the
    // block volume requirement.
    CHECK(m.quantity_mw >= 50.0 - 1e-9);
  }
  CHECK(verify_solution(inst, res).passed);

  auto oracle = solve_exact_enumeration(inst);
  CHECK(oracle.total_cost == doctest::Approx(res.total_cost).epsilon(1e-9));
}
