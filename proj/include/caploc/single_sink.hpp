#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

struct DpItem {
  std::int64_t capacity = 0;
  std::int64_t scaled_cost = 0;
};

// S_g(b, p): the largest total capacity of a subset of the first b items
// with at most g members and scaled cost exactly p.
class DpTable {
 public:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::min();

  DpTable(std::vector<DpItem> items, int g_max, std::int64_t p_max);

  [[nodiscard]] int g_max() const { return g_max_; }
  [[nodiscard]] int num_items() const { return static_cast<int>(items_.size()); }
  [[nodiscard]] std::int64_t p_max() const { return p_max_; }
  [[nodiscard]] const std::vector<DpItem>& items() const { return items_; }

  // kUnreachable for -infinity; out-of-range arguments throw std::out_of_range.
  [[nodiscard]] std::int64_t value(int g, int b, std::int64_t p) const;
  [[nodiscard]] bool reachable(int g, int b, std::int64_t p) const { return value(g, b, p) != kUnreachable; }

  // F_g(b, p) as 0-based item indices in increasing order; empty when the
  // entry is unreachable.
  [[nodiscard]] std::vector<int> witness(int g, int b, std::int64_t p) const;

 private:
  [[nodiscard]] size_t index(int g, int b, std::int64_t p) const;

  std::vector<DpItem> items_;
  int g_max_;
  std::int64_t p_max_;
  std::vector<std::int64_t> table_;
};

DpTable dp_solve(std::vector<DpItem> items, int g_max, std::int64_t p_max);

struct SingleSinkResult {
  IntegralSolution solution;
  Rational cost;
  int recursion_depth = 0;  // two-approx only
};

// Scaled-cost dynamic program over (t, r) subproblems with at most one
// open facility not fully used. Cost at most (1 + epsilon) times the optimum
// of the at-most-k problem. Throws std::invalid_argument unless the instance
// has one client and epsilon > 0, k >= 1.
std::optional<SingleSinkResult> fptas_solve(const Instance& inst, int k, const Rational& epsilon);

// LP-vertex guided branching for the exactly-k problem; cost at most twice
// its optimum. nullopt when the exactly-k relaxation is infeasible.
std::optional<SingleSinkResult> two_approx_solve(const Instance& inst, int k);

}  // namespace caploc
