#include "caploc/oracle.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "caploc/flow.hpp"

namespace caploc {

namespace {

void require_limit(const Instance& inst, int limit) {
  if (inst.num_facilities() > limit) {
    throw std::invalid_argument("oracle limited to " + std::to_string(limit) + " facilities, got " +
                                std::to_string(inst.num_facilities()));
  }
}

template <typename Allowed>
std::optional<OracleResult> search(const Instance& inst, Allowed allowed) {
  const int n = inst.num_facilities();
  const std::int64_t demand = inst.total_demand();
  std::optional<OracleResult> best;
  std::int64_t explored = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!allowed(std::popcount(mask))) continue;
    std::vector<bool> open(n, false);
    std::int64_t capacity = 0;
    Rational opening = 0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        open[i] = true;
        capacity += inst.facility(i).capacity;
        opening += inst.facility(i).opening_cost;
      }
    }
    if (capacity < demand) continue;
    ++explored;
    auto flow = serve_with_open_set(inst, open);
    if (!flow) continue;
    Rational total = flow->cost + opening;
    if (best && total >= best->optimum) continue;
    if (!best) best.emplace();
    best->optimum = std::move(total);
    best->witness = to_solution(inst, *flow);
    best->witness.open = open;
  }
  if (best) best->explored = explored;
  return best;
}

}  // namespace

std::optional<OracleResult> brute_force_ckfl(const Instance& inst, int k, CardinalityMode mode, int limit) {
  require_limit(inst, limit);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return search(inst, [&](int size) { return mode == CardinalityMode::kExactly ? size == k : size <= k; });
}

std::optional<OracleResult> brute_force_cfl(const Instance& inst, int limit) {
  require_limit(inst, limit);
  return search(inst, [](int) { return true; });
}

OracleResult brute_force_ukm(const Instance& inst, int k, int limit) {
  require_limit(inst, limit);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (inst.num_facilities() == 0) throw std::invalid_argument("no facilities");
  const int n = inst.num_facilities();
  const int m = inst.num_clients();
  std::optional<OracleResult> best;
  std::int64_t explored = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > k) continue;
    ++explored;
    Rational total = 0;
    std::vector<int> nearest(m, -1);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        if (((mask >> i) & 1u) && (nearest[j] < 0 || inst.unit_cost(i, j) < inst.unit_cost(nearest[j], j))) {
          nearest[j] = i;
        }
      }
      total += inst.unit_cost(nearest[j], j) * inst.client(j).demand;
    }
    if (best && total >= best->optimum) continue;
    if (!best) best.emplace();
    best->optimum = std::move(total);
    best->witness = IntegralSolution(n, m);
    for (int i = 0; i < n; ++i) best->witness.open[i] = ((mask >> i) & 1u) != 0;
    for (int j = 0; j < m; ++j) best->witness.at(nearest[j], j) = inst.client(j).demand;
  }
  best->explored = explored;
  return *best;
}

}  // namespace caploc
