#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "psitm/bounds.hpp"

using namespace psitm;

TEST_CASE("budget bits reproduce the worked numbers") {
  REQUIRE(budget_bits(IotaSpec{1, 2}, 1000) == 20);
  REQUIRE(budget_bits(IotaSpec{1, 3}, 1ULL << 20) == 60);
  REQUIRE(budget_bits(IotaSpec{1, 1}, 2) == 1);
  REQUIRE_THROWS_AS(budget_bits(IotaSpec{1, 1}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(budget_bits(IotaSpec{0, 1}, 8), std::invalid_argument);
}

TEST_CASE("budget bits strictly increase in every parameter") {
  for (int c = 1; c <= 4; ++c) {
    for (int d = 1; d <= 4; ++d) {
      REQUIRE(budget_bits(IotaSpec{c + 1, d}, 100) >
              budget_bits(IotaSpec{c, d}, 100));
      REQUIRE(budget_bits(IotaSpec{c, d + 1}, 100) >
              budget_bits(IotaSpec{c, d}, 100));
      REQUIRE(budget_bits(IotaSpec{c, d}, 200) >
              budget_bits(IotaSpec{c, d}, 100));
    }
  }
}

TEST_CASE("fooling bound pinned examples") {
  REQUIRE(fooling_bound({1, 2, 1000, 100.0}).integer_bound == 5);
  REQUIRE(fooling_bound({1, 3, 1ULL << 20, 900.0}).integer_bound == 15);
  for (int d = 1; d <= 5; ++d) {
    REQUIRE(fooling_bound({1, d, 1000, 1.0}).integer_bound == 1);
  }
}

TEST_CASE("fooling bound under the exact-real convention") {
  const BoundResult r =
      fooling_bound({1, 2, 1000, 100.0}, BudgetConvention::ExactReal);
  REQUIRE(r.integer_bound == 6);
  REQUIRE(r.trace.convention == BudgetConvention::ExactReal);
}

TEST_CASE("binary entropy") {
  REQUIRE_THAT(binary_entropy(0.5), Catch::Matchers::WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(binary_entropy(0.1), Catch::Matchers::WithinAbs(0.469, 1e-3));
  REQUIRE_THAT(binary_entropy(0.25),
               Catch::Matchers::WithinAbs(binary_entropy(0.75), 1e-15));
  REQUIRE_THROWS_AS(binary_entropy(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(binary_entropy(1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(binary_entropy(-0.2), std::invalid_argument);
}

TEST_CASE("fano bound average-case example") {
  BoundQuery q{1, 2, 1000, 60.0, 0.1};
  const BoundResult r = fano_bound(q);
  REQUIRE_THAT(r.value, Catch::Matchers::WithinAbs(2.68, 0.02));
  REQUIRE(r.integer_bound == 3);
  REQUIRE_THAT(r.trace.recompute(),
               Catch::Matchers::WithinRel(r.value, 1e-12));
}

TEST_CASE("fano approaches the fooling value as error vanishes") {
  BoundQuery q{1, 2, 1000, 60.0, 1e-12};
  const double fooling = fooling_bound(q).value;
  REQUIRE_THAT(fano_bound(q).value, Catch::Matchers::WithinRel(fooling, 1e-6));
}

TEST_CASE("fano never exceeds fooling at equal family size") {
  for (double logM : {10.0, 30.0, 60.0, 200.0}) {
    BoundQuery q{1, 2, 1000, logM, 0.0};
    const double fooling = fooling_bound(q).value;
    for (double eps = 0.02; eps < 0.98; eps += 0.02) {
      q.error_prob = eps;
      const BoundResult fano = fano_bound(q);
      REQUIRE(fano.value <= fooling + 1e-12);
      REQUIRE(fano.integer_bound <= fooling_bound(q).integer_bound);
    }
  }
}

TEST_CASE("fano rejects inadmissible error probabilities") {
  REQUIRE_THROWS_AS(fano_bound({1, 2, 1000, 1.0, 0.6}),
                    std::invalid_argument);  // 1 - 1/M = 0.5 at logM = 1
  REQUIRE_THROWS_AS(fano_bound({1, 2, 1000, 60.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("antisim threshold values") {
  REQUIRE_THAT(antisim_threshold(2, 1ULL << 10),
               Catch::Matchers::WithinAbs(0.1, 1e-15));
  REQUIRE_THAT(antisim_threshold(3, 1ULL << 10),
               Catch::Matchers::WithinAbs(std::log2(1.5) / 10.0, 1e-15));
  REQUIRE_THROWS_AS(antisim_threshold(1, 1024), std::invalid_argument);
  REQUIRE_THROWS_AS(antisim_threshold(2, 1), std::invalid_argument);
}

TEST_CASE("antisim threshold decreases in depth and input length") {
  for (int k = 2; k < 10; ++k) {
    REQUIRE(antisim_threshold(k + 1, 1024) < antisim_threshold(k, 1024));
  }
  double prev = antisim_threshold(2, 1 << 8);
  for (unsigned e = 9; e <= 24; ++e) {
    const double next = antisim_threshold(2, 1ULL << e);
    REQUIRE(next < prev);
    prev = next;
  }
  REQUIRE(antisim_threshold(2, 1ULL << 40) < 0.026);
}

TEST_CASE("antisim ratio boundary equivalence") {
  for (int k : {2, 3, 4, 7}) {
    for (std::uint64_t n : {std::uint64_t{256}, std::uint64_t{100000}}) {
      const double threshold = antisim_threshold(k, n);
      REQUIRE_THAT(antisim_ratio({k, n, threshold}),
                   Catch::Matchers::WithinRel(1.0, 1e-12));
      REQUIRE(antisim_ratio({k, n, threshold - 1e-6}) < 1.0);
      REQUIRE(antisim_ratio({k, n, threshold + 1e-6}) > 1.0);
    }
  }
}

TEST_CASE("antisim ratio example and monotonicity") {
  REQUIRE_THAT(antisim_ratio({2, 1024, 0.05}),
               Catch::Matchers::WithinAbs(std::sqrt(2.0) / 2.0, 1e-12));
  for (int k : {2, 3, 4}) {
    double prev = 0.0;
    for (double beta = 0.01; beta < 0.3; beta += 0.01) {
      const double ratio = antisim_ratio({k, 1024, beta});
      REQUIRE(ratio > prev);
      prev = ratio;
    }
  }
}

TEST_CASE("pointer-chase lower-bound estimate") {
  // m = 1000 encodes to n = 2*1000*10 + 1000 + 10 = 21010 at k = 2; the
  // fixed point must recover m and give 0.9*1000 / (1*1*15).
  const ChaseLowerBound lb = lk_lb_estimate(2, 21010, 0.9, 1);
  REQUIRE(lb.universe == 1000);
  REQUIRE_THAT(lb.value, Catch::Matchers::WithinRel(900.0 / 15.0, 1e-12));

  const ChaseLowerBound halved = lk_lb_estimate(2, 21010, 0.9, 2);
  REQUIRE_THAT(halved.value, Catch::Matchers::WithinRel(lb.value / 2.0, 1e-12));

  // Same value as the fooling bound at logM = alpha*m and depth k-1.
  const BoundResult fooling =
      fooling_bound({1, 1, 21010, 0.9 * 1000.0});
  REQUIRE_THAT(lb.value, Catch::Matchers::WithinRel(fooling.value, 1e-12));

  REQUIRE_THROWS_AS(lk_lb_estimate(2, 3, 0.9, 1), std::invalid_argument);
}

TEST_CASE("relaxed bounds") {
  BoundQuery q{1, 2, 1000, 100.0};
  RelaxationParams params;

  SECTION("no advice matches the plain fooling bound") {
    params.advice_bits = 0.0;
    const RelaxedBounds r = relaxed_bounds(q, params);
    REQUIRE(r.advice.integer_bound == fooling_bound(q).integer_bound);
    REQUIRE_THAT(r.advice.value,
                 Catch::Matchers::WithinRel(fooling_bound(q).value, 1e-12));
  }

  SECTION("degenerate multi-pass overhead matches fooling") {
    params.pass_overhead = 0.0;
    params.conversion_constant = 1.0;
    const RelaxedBounds r = relaxed_bounds(q, params);
    REQUIRE(r.multipass.integer_bound == 5);
  }

  SECTION("bandwidth shift by +ceil(log2 n)") {
    params.budget_shift = 10.0;
    const RelaxedBounds r = relaxed_bounds(q, params);
    REQUIRE(r.bandwidth.integer_bound == 4);  // ceil(100/30)
  }

  SECTION("bandwidth shift below one bit is an error") {
    params.budget_shift = -20.0;
    REQUIRE_THROWS_AS(relaxed_bounds(q, params), std::invalid_argument);
  }

  SECTION("entropy budget floors at zero") {
    params.entropy_budget = 500.0;
    const RelaxedBounds r = relaxed_bounds(q, params);
    REQUIRE(r.entropy.value == 0.0);
    REQUIRE(r.entropy.integer_bound == 0);
  }

  SECTION("entropy budget-mode flag widens the denominator") {
    params.entropy_budget = 10.0;
    const RelaxedBounds r = relaxed_bounds(q, params, BudgetConvention::CeilLog,
                                           /*r1_budget_mode=*/true);
    REQUIRE_THAT(r.entropy.value,
                 Catch::Matchers::WithinRel(100.0 / 30.0, 1e-12));
  }

  SECTION("invalid params") {
    params.passes = 0;
    REQUIRE_THROWS_AS(relaxed_bounds(q, params), std::invalid_argument);
  }
}

TEST_CASE("decision-tree depth bound mirrors fooling") {
  REQUIRE(dt_depth_bound({1, 2, 1000, 100.0}).integer_bound == 5);
  REQUIRE(dt_depth_bound({1, 3, 1ULL << 20, 900.0}).integer_bound == 15);
  for (int d = 1; d <= 3; ++d) {
    REQUIRE(dt_depth_bound({1, d, 1000, 1.0}).integer_bound == 1);
  }
  REQUIRE(dt_depth_bound({1, 2, 1000, 20.0}).integer_bound == 1);
  REQUIRE(dt_depth_bound({1, 2, 1000, 100.0}).trace.label ==
          "decision-tree depth");
}

TEST_CASE("ic gate bound") {
  const BoundResult r = ic_gate_bound(2, 1024, 1, 1.0);
  REQUIRE(r.integer_bound == 52);  // ceil(512/10)

  const BoundResult doubled = ic_gate_bound(2, 1024, 1, 2.0);
  REQUIRE_THAT(doubled.value, Catch::Matchers::WithinRel(2.0 * r.value, 1e-12));

  double prev = 1e300;
  for (int k = 2; k <= 12; ++k) {
    const BoundResult step = ic_gate_bound(k, 1024, 1, 1.0);
    REQUIRE(step.value < prev);
    prev = step.value;
  }
  REQUIRE_THROWS_AS(ic_gate_bound(1, 1024, 1, 1.0), std::invalid_argument);
}

TEST_CASE("bounds are monotone in budget and family size") {
  for (double logM = 5.0; logM <= 200.0; logM += 15.0) {
    double prev = 1e300;
    for (int d = 1; d <= 6; ++d) {
      const double value = fooling_bound({1, d, 1000, logM}).value;
      REQUIRE(value <= prev);
      prev = value;
    }
  }
  double prev = 0.0;
  for (double logM = 1.0; logM <= 300.0; logM += 7.0) {
    const double value = fooling_bound({1, 2, 1000, logM}).value;
    REQUIRE(value >= prev);
    prev = value;
  }
}

TEST_CASE("formula traces recompute their bound") {
  for (int d = 1; d <= 4; ++d) {
    for (double logM : {2.0, 17.5, 60.0, 333.0}) {
      for (auto convention :
           {BudgetConvention::CeilLog, BudgetConvention::ExactReal}) {
        const BoundResult r =
            fooling_bound({1, d, 4096, logM}, convention);
        REQUIRE_THAT(r.trace.recompute(),
                     Catch::Matchers::WithinRel(r.value, 1e-12));
        REQUIRE(r.trace.convention == convention);
      }
    }
  }
}
