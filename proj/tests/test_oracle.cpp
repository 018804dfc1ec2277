#include <gtest/gtest.h>

#include "caploc/exactlp.hpp"
#include "caploc/oracle.hpp"
#include "support/oracles.hpp"

namespace caploc {
namespace {

TEST(Oracle, Figure1) {
  const Instance inst = gen_figure1(10000, 1000000);
  const auto r = brute_force_ckfl(inst, 2, CardinalityMode::kAtMost);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->optimum, 10001);
  EXPECT_EQ(r->witness.open, (std::vector<bool>{true, false, false, true}));
  EXPECT_GT(r->explored, 0);
}

TEST(Oracle, SubsetSumExample) {
  const Instance inst = gen_subset_sum({2, 3, 4}, 5, 2);
  const auto r = brute_force_ckfl(inst, 2, CardinalityMode::kExactly);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->optimum, 3);
}

TEST(Oracle, ZeroCostsAndLimits) {
  const Instance zero({{2, 0}, {2, 0}}, {{1}, {1}},
                      std::vector<Rational>(16, Rational(0)), 2);
  const auto r = brute_force_ckfl(zero, 2, CardinalityMode::kAtMost);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->optimum, 0);
  RandomSpec big;
  big.facilities = 16;
  EXPECT_THROW(brute_force_ckfl(gen_random(big), 2, CardinalityMode::kAtMost), std::invalid_argument);
  EXPECT_THROW(brute_force_ckfl(zero, 0, CardinalityMode::kAtMost), std::invalid_argument);
  const Instance short_supply({{1, 0}}, {{2}}, star_metric({0}));
  EXPECT_FALSE(brute_force_cfl(short_supply));
}

TEST(Oracle, SelfConsistentMonotoneAndAboveLp) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.facilities = 5;
    spec.clients = 1 + static_cast<int>(seed % 3);
    spec.capacity = {2, 9};
    spec.demand = {1, 5};
    const Instance inst = gen_random(spec);
    std::optional<Rational> previous;
    const auto cfl = brute_force_cfl(inst);
    for (int k = 1; k <= 5; ++k) {
      const auto r = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
      if (previous) ASSERT_TRUE(r);
      if (!r) continue;
      EXPECT_TRUE(check_feasible(inst, r->witness, k).empty());
      EXPECT_EQ(evaluate(inst, r->witness).total, r->optimum);
      if (previous) EXPECT_LE(r->optimum, *previous);
      previous = r->optimum;
      ASSERT_TRUE(cfl);
      EXPECT_LE(cfl->optimum, r->optimum);
      const FacilityLp model = build_ckfl_lp(inst, k, Cardinality::kInequality);
      const LpResult lp = solve_vertex(model.lp);
      ASSERT_TRUE(lp.optimal());
      EXPECT_LE(lp.solution.objective_value, r->optimum);
      const auto exact = brute_force_ckfl(inst, k, CardinalityMode::kExactly);
      ASSERT_TRUE(exact);
      EXPECT_LE(r->optimum, exact->optimum);
      EXPECT_TRUE(check_feasible(inst, exact->witness, k, CardinalityMode::kExactly).empty());
    }
  }
}

TEST(Oracle, SingleSinkAgreesWithGreedyReference) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = testing::random_single_sink(seed, 6, 3);
    for (auto mode : {CardinalityMode::kAtMost, CardinalityMode::kExactly}) {
      const auto r = brute_force_ckfl(inst, 3, mode);
      const auto ref = testing::single_sink_optimum(inst, 3, mode == CardinalityMode::kExactly);
      ASSERT_EQ(r.has_value(), ref.has_value());
      if (r) EXPECT_EQ(r->optimum, *ref);
    }
  }
}

TEST(Oracle, UkmExamples) {
  // Facilities co-located with clients.
  std::vector<Rational> metric(16);
  auto set = [&](int a, int b, int v) { metric[a * 4 + b] = metric[b * 4 + a] = v; };
  set(0, 1, 6);
  set(0, 2, 0);
  set(0, 3, 6);
  set(1, 2, 6);
  set(1, 3, 0);
  set(2, 3, 6);
  const Instance inst({{1, 5}, {1, 5}}, {{3}, {4}}, metric);
  EXPECT_EQ(brute_force_ukm(inst, 2).optimum, 0);
  // k = 1: min over centers of sum d_j c_ij, i.e. min(4*6, 3*6).
  const OracleResult one = brute_force_ukm(inst, 1);
  EXPECT_EQ(one.optimum, 18);
  EXPECT_TRUE(one.witness.open[1]);
}

}  // namespace
}  // namespace caploc
