#include <gtest/gtest.h>

#include "caploc/instance_io.hpp"
#include "caploc/model.hpp"

namespace caploc {
namespace {

TEST(Instance, RejectsBadShapes) {
  EXPECT_THROW(Instance({{1, 0}}, {{1}}, std::vector<Rational>(3)), std::invalid_argument);
  EXPECT_THROW(Instance({{1, 0}}, {{1}}, std::vector<Rational>(4), 0), std::invalid_argument);
}

TEST(Instance, Figure1Shape) {
  const Instance inst = gen_figure1(10, 1000);
  ASSERT_EQ(inst.num_facilities(), 4);
  ASSERT_EQ(inst.num_clients(), 1);
  EXPECT_EQ(inst.facility(2).capacity, 10000);
  EXPECT_EQ(inst.facility(3).capacity, 11);
  EXPECT_EQ(inst.client(0).demand, 21);
  EXPECT_EQ(inst.unit_cost(2, 0), 100);
  EXPECT_EQ(inst.unit_cost(3, 0), 1);
  EXPECT_EQ(inst.k(), 2);
  EXPECT_TRUE(validate_instance(inst, true).ok());
}

TEST(Instance, SubsetSumCosts) {
  const Instance inst = gen_subset_sum({2, 3, 4}, 5, 2);
  EXPECT_EQ(inst.unit_cost(0, 0), make_rational(1, 2));
  EXPECT_EQ(inst.unit_cost(2, 0), make_rational(3, 4));
  EXPECT_TRUE(validate_instance(inst, true).ok());
  EXPECT_THROW(gen_subset_sum({1, 3}, 2, 1), std::invalid_argument);
}

TEST(Instance, ValidationFindsProblems) {
  std::vector<Rational> metric{0, 5, 1, 3, 0, 1, 1, 1, 0};
  const Instance inst({{0, -1}, {2, 0}}, {{0}}, metric);
  const auto report = validate_instance(inst, true);
  EXPECT_FALSE(report.ok());
  auto has = [&](const std::string& needle) {
    for (const auto& issue : report.issues) {
      if (issue.find(needle) != std::string::npos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("nonpositive capacity"));
  EXPECT_TRUE(has("negative opening cost"));
  EXPECT_TRUE(has("nonpositive demand"));
  EXPECT_TRUE(has("asymmetric"));
  EXPECT_TRUE(has("triangle"));
}

TEST(Instance, RandomGeneratorIsMetricAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.facilities = 5;
    spec.clients = 3;
    const Instance a = gen_random(spec);
    EXPECT_TRUE(validate_instance(a, true).ok());
    EXPECT_EQ(a, gen_random(spec));
    for (const auto& f : a.facilities()) {
      EXPECT_GE(f.capacity, 1);
      EXPECT_LE(f.capacity, 10);
    }
  }
  RandomSpec bad;
  bad.capacity = {3, 2};
  EXPECT_THROW(gen_random(bad), std::invalid_argument);
}

TEST(Solution, EvaluateAndFeasibility) {
  const Instance inst = gen_figure1(10, 1000);
  IntegralSolution sol(4, 1);
  sol.open[0] = sol.open[3] = true;
  sol.at(0, 0) = 10;
  sol.at(3, 0) = 11;
  EXPECT_EQ(evaluate(inst, sol).total, 11);
  EXPECT_TRUE(check_feasible(inst, sol).empty());
  EXPECT_TRUE(check_feasible(inst, sol, 2, CardinalityMode::kExactly).empty());
  EXPECT_FALSE(check_feasible(inst, sol, 3, CardinalityMode::kExactly).empty());
  sol.open[3] = false;
  EXPECT_FALSE(check_feasible(inst, sol).empty());
  sol.open[3] = true;
  sol.at(3, 0) = 12;
  EXPECT_FALSE(check_feasible(inst, sol).empty());
  EXPECT_THROW(evaluate(inst, IntegralSolution(3, 1)), std::invalid_argument);
}

TEST(InstanceIo, RoundTripsExactly) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.facilities = 1 + static_cast<int>(seed % 5);
    spec.clients = 1 + static_cast<int>(seed % 3);
    if (seed % 2 == 0) spec.k = 2;
    const Instance inst = gen_random(spec);
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
    EXPECT_EQ(digest(parse_instance(serialize(inst))), digest(inst));
  }
  const Instance sub = gen_subset_sum({2, 3, 7}, 9, 2);
  EXPECT_EQ(parse_instance(serialize(sub)), sub);
}

TEST(InstanceIo, CommentsAndBlankLines) {
  const std::string text =
      "# leading comment\ncaploc v1\n\nn 1 m 1 k -  # unbounded\n"
      "facility 0 cap 3 open 1/2\nclient 0 demand 2\nmetric\n0 4\n4 0\n";
  const Instance inst = parse_instance(text);
  EXPECT_EQ(inst.facility(0).opening_cost, make_rational(1, 2));
  EXPECT_FALSE(inst.k().has_value());
  EXPECT_EQ(inst.unit_cost(0, 0), 4);
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  const std::string base = "caploc v1\nn 1 m 1 k 1\nfacility 0 cap 3 open 0\nclient 0 demand 2\nmetric\n0 4\n4 0\n";
  auto line_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of(base), -1);
  std::string wide = base;
  wide.replace(wide.find("0 4\n"), 4, "0 4 4\n");
  EXPECT_EQ(line_of(wide), 6);
  std::string bad_cap = base;
  bad_cap.replace(bad_cap.find("cap 3"), 5, "cap x");
  EXPECT_EQ(line_of(bad_cap), 3);
  EXPECT_EQ(line_of(base + "extra\n"), 8);
  EXPECT_EQ(line_of("caploc v2\n"), 1);
  std::string zero_den = base;
  zero_den.replace(zero_den.find("4 0\n"), 4, "4/0 0\n");
  EXPECT_EQ(line_of(zero_den), 7);
}

TEST(InstanceIo, DigestIsStableHex) {
  const Instance inst = gen_figure1(10000, 1000000);
  const std::string d = digest(inst);
  EXPECT_EQ(d.size(), 16u);
  EXPECT_EQ(d, digest(gen_figure1(10000, 1000000)));
  EXPECT_NE(d, digest(gen_figure1(10000, 100000)));
}

}  // namespace
}  // namespace caploc
