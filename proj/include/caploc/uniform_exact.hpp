#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "caploc/flow.hpp"
#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

// (left, right) vertex pairs of K_{a,b}.
using BipartiteEdges = std::vector<std::pair<int, int>>;

// Calls `visit` once per spanning tree of K_{a,b}; edges are listed in
// lexicographic order. Throws std::invalid_argument unless a, b >= 1.
void enumerate_spanning_trees(int a, int b, const std::function<void(const BipartiteEdges&)>& visit);

// a^(b-1) * b^(a-1).
BigInt count_spanning_trees(int a, int b);

// A forest of facility-client edges carrying flow strictly between 0 and s.
// `distinguished` lists the facilities allowed to be below capacity.
struct UntightGraph {
  BipartiteEdges edges;  // (facility, client) in instance indices
  std::vector<int> distinguished;
  std::vector<std::int64_t> weights;  // parallel to edges once propagated

  [[nodiscard]] std::vector<int> facilities() const;
};

enum class PropagationOrder { kForward, kReverse };

// Fills in the unique edge weights implied by the tree structure, or
// nullopt when some weight leaves (0, s), a client would be over-served or
// left with a residue not divisible by s, or a facility outside
// `distinguished` is not exactly full. The order only changes the traversal
// (roots of components without a distinguished facility, child order).
// Throws std::invalid_argument if the edges contain a cycle or a component
// holds two distinguished facilities.
std::optional<UntightGraph> propagate_weights(const UntightGraph& graph, std::span<const std::int64_t> demands,
                                              std::int64_t s,
                                              PropagationOrder order = PropagationOrder::kForward);

// Structure of the edges with 0 < x_ij < s_i in a flow over all facilities.
struct UntightAudit {
  UntightGraph graph;  // distinguished = facilities with 0 < load < s_i
  bool acyclic = true;
  int max_not_full_per_component = 0;
  int num_facilities = 0;
  int num_edges = 0;
};

UntightAudit audit_untight(const Instance& inst, const FlowMatrix& flow);

struct ExactUniformConfig {
  int max_clients = 4;
};

struct ExactUniformResult {
  IntegralSolution solution;
  Rational cost;
  std::int64_t candidates = 0;  // untight graphs whose weights propagated
};

// Exact optimum for uniform capacities by enumerating untight subgraphs and
// solving each divisible remainder. Throws std::invalid_argument for
// non-uniform capacities or more clients than config.max_clients.
std::optional<ExactUniformResult> exact_uniform_solve(const Instance& inst, int k,
                                                      const ExactUniformConfig& config = {});

}  // namespace caploc
