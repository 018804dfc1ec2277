#include "caploc/flow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace caploc {

std::int64_t FlowMatrix::row_sum(int i) const {
  std::int64_t total = 0;
  for (int j = 0; j < sinks; ++j) total += at(i, j);
  return total;
}

std::int64_t FlowMatrix::column_sum(int j) const {
  std::int64_t total = 0;
  for (int i = 0; i < sources; ++i) total += at(i, j);
  return total;
}

namespace {

struct Arc {
  int to;
  std::int64_t residual;
  Rational cost;
};

// Successive shortest paths with node potentials on a small dense network.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : adjacency_(nodes) {}

  int add_arc(int from, int to, std::int64_t capacity, const Rational& cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, cost});
    arcs_.push_back({from, 0, -cost});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  [[nodiscard]] std::int64_t flow_on(int arc) const { return arcs_[arc ^ 1].residual; }

  // Pushes up to `amount` units; returns the amount sent.
  std::int64_t run(int source, int sink, std::int64_t amount) {
    const int n = static_cast<int>(adjacency_.size());
    initial_potentials(source);
    std::int64_t sent = 0;
    while (sent < amount) {
      std::vector<Rational> dist(n);
      std::vector<bool> reached(n, false), done(n, false);
      std::vector<int> via(n, -1);
      reached[source] = true;
      for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
          if (reached[v] && !done[v] && (u < 0 || dist[v] < dist[u])) u = v;
        }
        if (u < 0) break;
        done[u] = true;
        for (int id : adjacency_[u]) {
          const Arc& arc = arcs_[id];
          if (arc.residual == 0 || done[arc.to]) continue;
          Rational candidate = dist[u] + arc.cost + potential_[u] - potential_[arc.to];
          if (!reached[arc.to] || candidate < dist[arc.to]) {
            reached[arc.to] = true;
            dist[arc.to] = std::move(candidate);
            via[arc.to] = id;
          }
        }
      }
      if (!reached[sink]) break;
      for (int v = 0; v < n; ++v) {
        if (reached[v]) potential_[v] += dist[v];
      }
      std::int64_t bottleneck = amount - sent;
      for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        bottleneck = std::min(bottleneck, arcs_[via[v]].residual);
      }
      for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].residual -= bottleneck;
        arcs_[via[v] ^ 1].residual += bottleneck;
      }
      sent += bottleneck;
    }
    return sent;
  }

 private:
  void initial_potentials(int source) {
    const int n = static_cast<int>(adjacency_.size());
    potential_.assign(n, Rational(0));
    std::vector<bool> reached(n, false);
    reached[source] = true;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        if (!reached[u]) continue;
        for (int id : adjacency_[u]) {
          const Arc& arc = arcs_[id];
          if (arc.residual == 0) continue;
          Rational candidate = potential_[u] + arc.cost;
          if (!reached[arc.to] || candidate < potential_[arc.to]) {
            reached[arc.to] = true;
            potential_[arc.to] = std::move(candidate);
            changed = true;
          }
        }
      }
      if (!changed) return;
    }
    throw std::logic_error("negative cycle in transportation network");
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<Rational> potential_;
};

// Finds a cycle in the bipartite support of `flow` (sources then sinks as
// nodes); returns the edge sequence (i, j) around it, or empty.
std::vector<std::pair<int, int>> find_support_cycle(const std::vector<std::int64_t>& flow, int rows,
                                                    int cols) {
  const int n = rows + cols;
  std::vector<int> parent(n, -2), depth(n, 0);
  auto neighbours = [&](int u) {
    std::vector<int> out;
    if (u < rows) {
      for (int j = 0; j < cols; ++j) {
        if (flow[static_cast<size_t>(u) * cols + j] > 0) out.push_back(rows + j);
      }
    } else {
      for (int i = 0; i < rows; ++i) {
        if (flow[static_cast<size_t>(i) * cols + (u - rows)] > 0) out.push_back(i);
      }
    }
    return out;
  };
  auto edge = [rows](int a, int b) {
    return a < rows ? std::make_pair(a, b - rows) : std::make_pair(b, a - rows);
  };
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : neighbours(u)) {
        if (v == parent[u]) continue;
        if (parent[v] == -2) {
          parent[v] = u;
          depth[v] = depth[u] + 1;
          stack.push_back(v);
          continue;
        }
        // Non-tree edge u-v closes a cycle through their common ancestor.
        std::vector<int> left{u}, right{v};
        int a = u, b = v;
        while (a != b) {
          if (depth[a] >= depth[b]) {
            a = parent[a];
            left.push_back(a);
          } else {
            b = parent[b];
            right.push_back(b);
          }
        }
        right.pop_back();
        std::reverse(right.begin(), right.end());
        left.insert(left.end(), right.begin(), right.end());
        std::vector<std::pair<int, int>> cycle;
        for (size_t p = 0; p < left.size(); ++p) {
          cycle.push_back(edge(left[p], left[(p + 1) % left.size()]));
        }
        return cycle;
      }
    }
  }
  return {};
}

// Shifts flow around support cycles until the support is a forest. At an
// optimum every such cycle has zero cost, so the cost is unchanged.
void cancel_support_cycles(std::vector<std::int64_t>& flow, int rows, int cols,
                           const std::vector<Rational>& costs) {
  for (;;) {
    const auto cycle = find_support_cycle(flow, rows, cols);
    if (cycle.empty()) return;
    Rational delta = 0;
    for (size_t p = 0; p < cycle.size(); ++p) {
      const Rational& c = costs[static_cast<size_t>(cycle[p].first) * cols + cycle[p].second];
      delta += p % 2 == 0 ? c : Rational(-c);
    }
    if (sgn(delta) != 0) throw std::logic_error("support cycle with nonzero cost at an optimum");
    // Decrease the edges of whichever parity holds the smallest flow.
    std::int64_t theta = std::numeric_limits<std::int64_t>::max();
    size_t parity = 0;
    for (size_t p = 0; p < cycle.size(); ++p) {
      const std::int64_t f = flow[static_cast<size_t>(cycle[p].first) * cols + cycle[p].second];
      if (f < theta) {
        theta = f;
        parity = p % 2;
      }
    }
    for (size_t p = 0; p < cycle.size(); ++p) {
      std::int64_t& f = flow[static_cast<size_t>(cycle[p].first) * cols + cycle[p].second];
      f += p % 2 == parity ? -theta : theta;
    }
  }
}

}  // namespace

std::optional<FlowMatrix> solve_transportation(const TransportationProblem& tp) {
  const int a = tp.num_sources();
  const int b = tp.num_sinks();
  if (tp.unit_costs.size() != static_cast<size_t>(a) * b) {
    throw std::invalid_argument("cost matrix does not match supplies x demands");
  }
  for (auto v : tp.supplies) {
    if (v < 0) throw std::invalid_argument("negative supply");
  }
  for (auto v : tp.demands) {
    if (v < 0) throw std::invalid_argument("negative demand");
  }
  const std::int64_t supply = std::accumulate(tp.supplies.begin(), tp.supplies.end(), std::int64_t{0});
  const std::int64_t demand = std::accumulate(tp.demands.begin(), tp.demands.end(), std::int64_t{0});
  if (tp.balanced && supply != demand) {
    throw std::invalid_argument("balanced transportation problem with unequal totals");
  }
  if (supply < demand) return std::nullopt;

  const int source = 0;
  const int sink = a + b + 1;
  MinCostFlow network(a + b + 2);
  for (int i = 0; i < a; ++i) network.add_arc(source, 1 + i, tp.supplies[i], 0);
  std::vector<int> arc_of(static_cast<size_t>(a) * b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      arc_of[static_cast<size_t>(i) * b + j] = network.add_arc(1 + i, 1 + a + j, demand, tp.cost(i, j));
    }
  }
  for (int j = 0; j < b; ++j) network.add_arc(1 + a + j, sink, tp.demands[j], 0);
  if (network.run(source, sink, demand) != demand) {
    throw std::logic_error("transportation network failed to route feasible demand");
  }

  // Extended matrix with a zero-cost slack column absorbing spare supply.
  const int cols = b + 1;
  std::vector<std::int64_t> extended(static_cast<size_t>(a) * cols, 0);
  std::vector<Rational> extended_costs(static_cast<size_t>(a) * cols);
  for (int i = 0; i < a; ++i) {
    std::int64_t used = 0;
    for (int j = 0; j < b; ++j) {
      const std::int64_t f = network.flow_on(arc_of[static_cast<size_t>(i) * b + j]);
      extended[static_cast<size_t>(i) * cols + j] = f;
      extended_costs[static_cast<size_t>(i) * cols + j] = tp.cost(i, j);
      used += f;
    }
    extended[static_cast<size_t>(i) * cols + b] = tp.supplies[i] - used;
  }
  cancel_support_cycles(extended, a, cols, extended_costs);

  FlowMatrix out;
  out.sources = a;
  out.sinks = b;
  out.flow.resize(static_cast<size_t>(a) * b);
  out.cost = 0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const std::int64_t f = extended[static_cast<size_t>(i) * cols + j];
      out.flow[static_cast<size_t>(i) * b + j] = f;
      if (f != 0) out.cost += tp.cost(i, j) * f;
    }
  }
  return out;
}

bool support_is_forest(const FlowMatrix& flow) {
  return find_support_cycle(flow.flow, flow.sources, flow.sinks).empty();
}

std::optional<FlowMatrix> serve_with_open_set(const Instance& inst, const std::vector<bool>& open) {
  const int n = inst.num_facilities();
  const int m = inst.num_clients();
  if (static_cast<int>(open.size()) != n) throw std::invalid_argument("open set size mismatch");
  std::vector<int> rows;
  for (int i = 0; i < n; ++i) {
    if (open[i]) rows.push_back(i);
  }
  TransportationProblem tp;
  tp.balanced = false;
  for (int i : rows) tp.supplies.push_back(inst.facility(i).capacity);
  for (int j = 0; j < m; ++j) tp.demands.push_back(inst.client(j).demand);
  for (int i : rows) {
    for (int j = 0; j < m; ++j) tp.unit_costs.push_back(inst.unit_cost(i, j));
  }
  auto sub = solve_transportation(tp);
  if (!sub) return std::nullopt;
  FlowMatrix out;
  out.sources = n;
  out.sinks = m;
  out.flow.assign(static_cast<size_t>(n) * m, 0);
  out.cost = sub->cost;
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < m; ++j) {
      out.flow[static_cast<size_t>(rows[r]) * m + j] = sub->at(static_cast<int>(r), j);
    }
  }
  return out;
}

IntegralSolution to_solution(const Instance& inst, const FlowMatrix& flow) {
  IntegralSolution sol(inst.num_facilities(), inst.num_clients());
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) {
      sol.at(i, j) = make_rational(flow.at(i, j));
      if (flow.at(i, j) > 0) sol.open[i] = true;
    }
  }
  return sol;
}

std::optional<DivisibleAssignment> solve_divisible_residue(const Instance& inst,
                                                           std::span<const int> pool,
                                                           std::span<const std::int64_t> units, int k) {
  if (static_cast<int>(units.size()) != inst.num_clients()) {
    throw std::invalid_argument("units vector size mismatch");
  }
  const std::int64_t owed = std::accumulate(units.begin(), units.end(), std::int64_t{0});
  const auto pool_size = static_cast<std::int64_t>(pool.size());
  if (owed > k || owed > pool_size) return std::nullopt;
  DivisibleAssignment result;
  result.cost = 0;
  if (owed == 0) return result;
  const std::int64_t s = inst.facility(pool.front()).capacity;

  std::vector<int> sinks;
  for (int j = 0; j < inst.num_clients(); ++j) {
    if (units[j] > 0) sinks.push_back(j);
  }
  const bool dummy = owed < pool_size;
  TransportationProblem tp;
  tp.supplies.assign(pool.size(), 1);
  for (int j : sinks) tp.demands.push_back(units[j]);
  if (dummy) tp.demands.push_back(pool_size - owed);
  for (int i : pool) {
    for (int j : sinks) tp.unit_costs.push_back(s * inst.unit_cost(i, j) + inst.facility(i).opening_cost);
    if (dummy) tp.unit_costs.push_back(0);
  }
  auto flow = solve_transportation(tp);
  if (!flow) return std::nullopt;
  result.cost = flow->cost;
  for (size_t r = 0; r < pool.size(); ++r) {
    for (size_t c = 0; c < sinks.size(); ++c) {
      if (flow->at(static_cast<int>(r), static_cast<int>(c)) > 0) result.pairs.emplace_back(pool[r], sinks[c]);
    }
  }
  return result;
}

std::optional<IntegralSolution> solve_divisible_ckflu(const Instance& inst, int k) {
  if (inst.num_facilities() == 0 || !inst.uniform_capacity()) {
    throw std::invalid_argument("divisible solver needs uniform capacities");
  }
  const std::int64_t s = inst.facility(0).capacity;
  std::vector<std::int64_t> units;
  for (const auto& c : inst.clients()) {
    if (c.demand % s != 0) throw std::invalid_argument("demand not a multiple of the capacity");
    units.push_back(c.demand / s);
  }
  std::vector<int> pool(inst.num_facilities());
  std::iota(pool.begin(), pool.end(), 0);
  auto assignment = solve_divisible_residue(inst, pool, units, k);
  if (!assignment) return std::nullopt;
  IntegralSolution sol(inst.num_facilities(), inst.num_clients());
  for (auto [i, j] : assignment->pairs) {
    sol.open[i] = true;
    sol.at(i, j) = make_rational(s);
  }
  return sol;
}

}  // namespace caploc
