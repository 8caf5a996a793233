#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rap/instance.hpp"
#include "rap/scenarios.hpp"

using namespace rap;

TEST_CASE("milp instance resolves the uniform block floor") {
  Scenario s = scenario("small-case");
  auto inst = build_instance(s.offers, s.requirement, Formulation::MilpD);
  CHECK(inst.psi == doctest::Approx(0.999749968742).epsilon(1e-9));
  CHECK(std::pow(inst.psi, 2) >= 0.9995);
  CHECK(inst.big_m == 40.0);  // defaults to the largest offered volume
  CHECK(inst.weight[0] == doctest::Approx(std::log1p(-0.80)).epsilon(1e-15));
}

TEST_CASE("psi unachievable by any subset is rejected at build time") {
  OfferBook one({{"a", 50, 0.5, 10, ""}});
  Requirement req;
  req.target_volume_mw = 10;
  req.target_reliability = 0.9995;
  req.block_count = 1;
  CHECK_THROWS_WITH_AS(
      (void)build_instance(one, req, Formulation::MilpD),
      doctest::Contains("not achievable"), std::invalid_argument);
}

TEST_CASE("user-provided psi below the system guarantee is rejected") {
  Scenario s = scenario("small-case");
  FormulationParams p;
  p.psi = 0.99;  // 0.99^2 < 0.9995
  CHECK_THROWS_AS((void)build_instance(s.offers, s.requirement, Formulation::MilpD, p),
                  std::invalid_argument);
}

TEST_CASE("uniform-e computes the minimum offers per block") {
  OfferBook book({{"a", 50, 0.9, 10, ""},
                  {"b", 50, 0.9, 11, ""},
                  {"c", 50, 0.91, 12, ""},
                  {"d", 50, 0.95, 13, ""},
                  {"e", 50, 0.5, 1, ""}});
  Requirement req;
  req.target_volume_mw = 50;
  req.target_reliability = 0.9;
  req.block_count = 1;
  FormulationParams p;
  p.psi = 0.9999;
  p.uniform_offer_reliability = 0.9;

  auto inst = build_instance(book, req, Formulation::UniformE, p);
  // ln(1e-4)/ln(0.1) is exactly 4; the epsilon guard keeps the ceiling at 4.
  CHECK(inst.min_offers_per_block == 4);
  CHECK(inst.eligible[0]);
  CHECK(!inst.eligible[4]);  // R=0.5 below the block floor

  // Only 4 eligible offers, quota 5 -> infeasible by construction.
  p.psi = 0.99999;
  CHECK_THROWS_AS((void)build_instance(book, req, Formulation::UniformE, p),
                  std::invalid_argument);
}

TEST_CASE("correlation matrix validation") {
  OfferBook book({{"a", 50, 0.9, 10, ""}, {"b", 50, 0.92, 11, ""}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.9;
  req.block_count = 1;

  SUBCASE("all-ones reproduces the plain weights") {
    auto f = build_instance(book, req, Formulation::CorrelatedF,
                            {.correlation = {1, 1, 1, 1}});
    auto d = build_instance(book, req, Formulation::MilpD);
    CHECK(f.weight[0] == d.weight[0]);
    CHECK(f.weight[1] == d.weight[1]);
  }
  SUBCASE("off-diagonal 0.5 halves the coefficient") {
    auto f = build_instance(book, req, Formulation::CorrelatedF,
                            {.correlation = {1, 0.5, 0.5, 1}});
    CHECK(f.weight[0] == doctest::Approx(0.5 * std::log1p(-0.9)).epsilon(1e-15));
    CHECK(f.gamma[0] == doctest::Approx(0.5));
  }
  SUBCASE("zero entries are rejected") {
    CHECK_THROWS_AS((void)build_instance(book, req, Formulation::CorrelatedF,
                                         {.correlation = {1, 0.0, 0.0, 1}}),
                    std::invalid_argument);
  }
  SUBCASE("asymmetry is rejected") {
    CHECK_THROWS_AS((void)build_instance(book, req, Formulation::CorrelatedF,
                                         {.correlation = {1, 0.5, 0.6, 1}}),
                    std::invalid_argument);
  }
  SUBCASE("non-unit diagonal is rejected") {
    CHECK_THROWS_AS((void)build_instance(book, req, Formulation::CorrelatedF,
                                         {.correlation = {0.9, 0.5, 0.5, 1}}),
                    std::invalid_argument);
  }
}

TEST_CASE("source-restricted achievability check") {
  // Three sources of R=0.9 cannot reach psi=0.9999 with one offer each
  // (0.1^3 = 1e-3 > 1e-4).
  OfferBook book({{"w1", 50, 0.9, 10, "wind"},
                  {"w2", 50, 0.9, 10, "wind"},
                  {"s1", 50, 0.9, 10, "solar"},
                  {"h1", 50, 0.9, 10, "hydro"}});
  Requirement req;
  req.target_volume_mw = 40;
  req.target_reliability = 0.9;
  req.block_count = 1;
  FormulationParams p;
  p.psi = 0.9999;
  CHECK_THROWS_AS((void)build_instance(book, req, Formulation::SourceRestrictedG, p),
                  std::invalid_argument);
  p.psi = 0.999;  // 1e-3 <= 1e-3: boundary feasible
  CHECK_NOTHROW((void)build_instance(book, req, Formulation::SourceRestrictedG, p));
}

TEST_CASE("formulation tags parse") {
  CHECK(parse_formulation("milp") == Formulation::MilpD);
  CHECK(parse_formulation("MILP-D") == Formulation::MilpD);
  CHECK(parse_formulation("rminlp") == Formulation::RminlpC);
  CHECK(parse_formulation("minlp") == Formulation::MinlpA);
  CHECK(parse_formulation("unaware") == Formulation::UnawareBenchmark);
  CHECK(!parse_formulation("nope"));
}
