#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

struct TransportationProblem {
  std::vector<std::int64_t> supplies;
  std::vector<std::int64_t> demands;
  std::vector<Rational> unit_costs;  // row-major sources x sinks
  // Balanced: supplies and demands have equal totals. Otherwise supplies
  // may exceed demands and only the sinks must be met exactly.
  bool balanced = true;

  [[nodiscard]] int num_sources() const { return static_cast<int>(supplies.size()); }
  [[nodiscard]] int num_sinks() const { return static_cast<int>(demands.size()); }
  [[nodiscard]] const Rational& cost(int i, int j) const {
    return unit_costs[static_cast<size_t>(i) * demands.size() + j];
  }
};

struct FlowMatrix {
  int sources = 0;
  int sinks = 0;
  std::vector<std::int64_t> flow;  // row-major
  Rational cost;

  [[nodiscard]] std::int64_t at(int i, int j) const { return flow[static_cast<size_t>(i) * sinks + j]; }
  [[nodiscard]] std::int64_t row_sum(int i) const;
  [[nodiscard]] std::int64_t column_sum(int j) const;
};

// Integral optimal flow; its support is a forest, and with the implicit slack
// sink attached no component holds two sources with spare supply.
// Throws std::invalid_argument for inconsistent dimensions, negative
// entries, or unequal totals in balanced mode. Returns nullopt when total
// supply is below total demand.
std::optional<FlowMatrix> solve_transportation(const TransportationProblem& tp);

// True iff the bipartite support graph {(i, j) : flow > 0} has no cycle.
bool support_is_forest(const FlowMatrix& flow);

// Optimal service of every client by the facilities marked open. The matrix
// covers every facility; closed rows are zero. nullopt iff open capacity is
// below total demand.
std::optional<FlowMatrix> serve_with_open_set(const Instance& inst, const std::vector<bool>& open);

// Opens every facility with positive flow and copies the assignment.
IntegralSolution to_solution(const Instance& inst, const FlowMatrix& flow);

// Inputs to the divisible reduction: `units[j]` multiples of the uniform
// capacity s are owed to client j, served only from `pool`, with at most
// `k` facilities opened.
struct DivisibleAssignment {
  Rational cost;  // opening plus service
  std::vector<std::pair<int, int>> pairs;  // (facility, client), each facility once
};

std::optional<DivisibleAssignment> solve_divisible_residue(const Instance& inst,
                                                           std::span<const int> pool,
                                                           std::span<const std::int64_t> units, int k);

// Exact optimum when all capacities equal s and every demand is a multiple
// of s. Throws std::invalid_argument if the instance is not divisible.
std::optional<IntegralSolution> solve_divisible_ckflu(const Instance& inst, int k);

}  // namespace caploc
