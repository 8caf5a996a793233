#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>

#include "rap/reliability.hpp"
#include "rap/types.hpp"

using namespace rap;

TEST_CASE("block reliability: horizontal stacking") {
  std::array<double, 2> pair{0.90, 0.80};
  CHECK(block_reliability(pair) == doctest::Approx(0.98).epsilon(1e-12));

  std::array<double, 2> intro{0.98, 0.95};
  CHECK(block_reliability(intro) == doctest::Approx(0.999).epsilon(1e-12));

  std::array<double, 1> single{0.37};
  CHECK(block_reliability(single) == doctest::Approx(0.37).epsilon(1e-12));

  CHECK(block_reliability({}) == 0.0);

  std::array<double, 1> one{1.0};
  CHECK_THROWS_AS(block_reliability(one), std::invalid_argument);
  std::array<double, 1> neg{-0.1};
  CHECK_THROWS_AS(block_reliability(neg), std::invalid_argument);
}

TEST_CASE("block reliability: monotone, dominates components") {
  // seeds give assorted reliability lists; adding an offer with R>0 must
  // strictly increase the result and the stack beats each component.
  std::uint64_t state = 42;
  auto next01 = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 999983) / 1000003.0;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> rels;
    int n = 1 + static_cast<int>(next01() * 6);
    double max_r = 0.0;
    for (int k = 0; k < n; ++k) {
      rels.push_back(next01() * 0.999);
      max_r = std::max(max_r, rels.back());
    }
    double base = block_reliability(rels);
    CHECK(base >= max_r - 1e-15);
    double extra = 0.001 + next01() * 0.9;
    rels.push_back(extra);
    CHECK(block_reliability(rels) > base);
  }
}

TEST_CASE("stack reliability: vertical stacking") {
  std::array<double, 2> two{0.95, 0.95};
  CHECK(stack_reliability(two) == doctest::Approx(0.9025).epsilon(1e-12));

  // Block factorization of the published small-case optimum.
  std::array<double, 2> opt{0.9996, 0.9999};
  CHECK(stack_reliability(opt) == doctest::Approx(0.99950004).epsilon(1e-12));

  std::array<double, 1> one{0.7};
  CHECK(stack_reliability(one) == doctest::Approx(0.7));
  CHECK(stack_reliability({}) == 1.0);

  std::array<double, 3> with_zero{0.9, 0.0, 0.8};
  CHECK(stack_reliability(with_zero) == 0.0);

  std::array<double, 1> bad{1.5};
  CHECK_THROWS_AS(stack_reliability(bad), std::invalid_argument);
}

TEST_CASE("stack reliability bounded by weakest block") {
  std::uint64_t state = 7;
  auto next01 = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> phis;
    int n = 1 + static_cast<int>(next01() * 5);
    double min_phi = 1.0;
    for (int k = 0; k < n; ++k) {
      phis.push_back(next01());
      min_phi = std::min(min_phi, phis.back());
    }
    CHECK(stack_reliability(phis) <= min_phi + 1e-15);
  }
}

TEST_CASE("uniform block reliability") {
  double psi2 = uniform_block_reliability(0.9995, 2);
  CHECK(psi2 == doctest::Approx(0.9997499687421851).epsilon(1e-12));
  CHECK(std::abs(psi2 * psi2 - 0.9995) < 1e-12);

  CHECK(uniform_block_reliability(0.9995, 1) == 0.9995);

  double psi5 = uniform_block_reliability(0.9995, 5);
  CHECK(psi5 == doctest::Approx(std::pow(0.9995, 0.2)).epsilon(1e-15));
  CHECK(std::abs(std::pow(psi5, 5) - 0.9995) < 1e-12);

  CHECK_THROWS_AS(uniform_block_reliability(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(uniform_block_reliability(0.5, 0), std::invalid_argument);
}

TEST_CASE("uniform block reliability round-trips across the grid") {
  for (int t = 1; t <= 99; ++t) {
    for (int k = 1; k <= 12; ++k) {
      double target = t / 100.0;
      double psi = uniform_block_reliability(target, k);
      CHECK(std::abs(std::pow(psi, k) - target) <= 1e-12);
    }
  }
}

TEST_CASE("derive block count") {
  CHECK(derive_block_count(500.0, 100.0) == 5);
  CHECK(derive_block_count(40.0, 20.0) == 2);
  CHECK(derive_block_count(500.0, 500.0) == 1);
  CHECK(derive_block_count(500.0, 600.0) == 1);
  CHECK(derive_block_count(501.0, 100.0) == 6);
  CHECK_THROWS_AS(derive_block_count(500.0, 0.0), std::invalid_argument);
}

TEST_CASE("offer book validation") {
  CHECK_THROWS_AS(OfferBook({{"a", 10, 1.0, 5, "s"}}), std::invalid_argument);
  CHECK_THROWS_AS(OfferBook({{"a", 0, 0.5, 5, "s"}}), std::invalid_argument);
  CHECK_THROWS_AS(OfferBook({{"a", 10, 0.5, -1, "s"}}), std::invalid_argument);
  CHECK_THROWS_AS(OfferBook({{"a", 10, 0.5, 5, "s"}, {"a", 9, 0.4, 5, "s"}}),
                  std::invalid_argument);
  OfferBook ok({{"a", 10, 0.5, 5, "s"}, {"b", 9, 0.0, 5, "s"}});
  CHECK(ok.size() == 2);
  CHECK(ok.max_volume() == 10);
  CHECK(ok.index_of("b") == 1);
  CHECK(!ok.index_of("c"));
}

TEST_CASE("portfolio metrics recompute the published small-case rows") {
  OfferBook book({{"1", 40, 0.80, 80, ""},
                  {"2", 30, 0.90, 90, ""},
                  {"3", 30, 0.95, 95, ""},
                  {"4", 30, 0.98, 98, ""},
                  {"5a", 20, 0.99, 99, ""},
                  {"5b", 20, 0.99, 99, ""}});

  auto block = [&](int id, std::vector<std::string> ids, double q) {
    BlockAssignment b;
    b.block_id = id;
    b.volume_mw = q;
    std::vector<double> rels;
    for (auto& oid : ids) {
      b.members.push_back({oid, true, q});
      rels.push_back(book.at(*book.index_of(oid)).reliability);
    }
    b.reliability = block_reliability(rels);
    return b;
  };

  SUBCASE("exact optimum: blocks {1,2,4} and {5a,5b} at 20 MW") {
    auto m = portfolio_metrics(book, {block(1, {"1", "2", "4"}, 20),
                                      block(2, {"5a", "5b"}, 20)});
    CHECK(m.total_cost == doctest::Approx(9320).epsilon(1e-12));
    CHECK(m.total_volume_mw == doctest::Approx(100).epsilon(1e-12));
    CHECK(m.achieved_reliability == doctest::Approx(0.99950004).epsilon(1e-9));
  }

  SUBCASE("relaxed optimum: blocks {1,3,4} and {5a,5b} at 20 MW") {
    auto m = portfolio_metrics(book, {block(1, {"1", "3", "4"}, 20),
                                      block(2, {"5a", "5b"}, 20)});
    CHECK(m.total_cost == doctest::Approx(9420).epsilon(1e-12));
    CHECK(m.total_volume_mw == doctest::Approx(100).epsilon(1e-12));
    // (1-2e-4)(1-1e-4); the published table prints psi^2 instead.
    CHECK(m.achieved_reliability == doctest::Approx(0.99970002).epsilon(1e-9));
  }

  SUBCASE("empty portfolio") {
    auto m = portfolio_metrics(book, {});
    CHECK(m.total_cost == 0.0);
    CHECK(m.total_volume_mw == 0.0);
    CHECK(m.achieved_reliability == 1.0);
  }

  SUBCASE("violations are flagged, not silently computed") {
    auto bad = block(1, {"1", "2"}, 20);
    bad.members[0].quantity_mw = 10;  // below the block volume
    CHECK_THROWS_AS(portfolio_metrics(book, {bad}), std::invalid_argument);

    auto rejected = block(1, {"1", "2"}, 20);
    rejected.members[0].accepted = false;  // nonzero quantity on a reject
    CHECK_THROWS_AS(portfolio_metrics(book, {rejected}), std::invalid_argument);

    auto misstated = block(1, {"1", "2"}, 20);
    misstated.reliability = 0.5;
    CHECK_THROWS_AS(portfolio_metrics(book, {misstated}), std::invalid_argument);
  }
}
