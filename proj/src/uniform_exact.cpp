#include "caploc/uniform_exact.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace caploc {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

void enumerate_spanning_trees(int a, int b, const std::function<void(const BipartiteEdges&)>& visit) {
  if (a < 1 || b < 1) throw std::invalid_argument("both sides need at least one vertex");
  const int total = a * b;
  const int need = a + b - 1;
  BipartiteEdges chosen;
  // Can the chosen edges plus the undecided ones from `from` still connect
  // every vertex?
  auto connectable = [&](const UnionFind& base, int from) {
    UnionFind uf = base;
    for (int e = from; e < total; ++e) uf.unite(e / b, a + e % b);
    const int root = uf.find(0);
    for (int v = 1; v < a + b; ++v) {
      if (uf.find(v) != root) return false;
    }
    return true;
  };
  std::function<void(int, const UnionFind&)> go = [&](int e, const UnionFind& uf) {
    if (static_cast<int>(chosen.size()) == need) {
      visit(chosen);
      return;
    }
    if (e == total || static_cast<int>(chosen.size()) + (total - e) < need) return;
    const int i = e / b;
    const int j = e % b;
    UnionFind with = uf;
    if (with.unite(i, a + j)) {
      chosen.emplace_back(i, j);
      go(e + 1, with);
      chosen.pop_back();
    }
    if (connectable(uf, e + 1)) go(e + 1, uf);
  };
  go(0, UnionFind(a + b));
}

BigInt count_spanning_trees(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("both sides need at least one vertex");
  BigInt left, right;
  mpz_ui_pow_ui(left.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b - 1));
  mpz_ui_pow_ui(right.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(a - 1));
  return left * right;
}

std::vector<int> UntightGraph::facilities() const {
  std::vector<int> out;
  for (const auto& [i, j] : edges) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<UntightGraph> propagate_weights(const UntightGraph& graph, std::span<const std::int64_t> demands,
                                              std::int64_t s, PropagationOrder order) {
  // Local vertices: facilities first, then clients, both in increasing id.
  const std::vector<int> facilities = graph.facilities();
  std::vector<int> clients;
  for (const auto& [i, j] : graph.edges) clients.push_back(j);
  std::sort(clients.begin(), clients.end());
  clients.erase(std::unique(clients.begin(), clients.end()), clients.end());
  const int nf = static_cast<int>(facilities.size());
  const int nodes = nf + static_cast<int>(clients.size());
  auto local_facility = [&](int i) {
    return static_cast<int>(std::lower_bound(facilities.begin(), facilities.end(), i) - facilities.begin());
  };
  auto local_client = [&](int j) {
    return nf + static_cast<int>(std::lower_bound(clients.begin(), clients.end(), j) - clients.begin());
  };

  std::vector<std::vector<int>> adjacency(nodes);
  UnionFind uf(nodes);
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    const int u = local_facility(graph.edges[e].first);
    const int v = local_client(graph.edges[e].second);
    if (!uf.unite(u, v)) throw std::invalid_argument("untight graph contains a cycle");
    adjacency[u].push_back(static_cast<int>(e));
    adjacency[v].push_back(static_cast<int>(e));
  }
  if (order == PropagationOrder::kReverse) {
    for (auto& list : adjacency) std::reverse(list.begin(), list.end());
  }
  std::vector<bool> distinguished(nf, false);
  for (int i : graph.distinguished) {
    const int u = local_facility(i);
    if (u >= nf || facilities[u] != i) throw std::invalid_argument("distinguished facility not in the graph");
    distinguished[u] = true;
  }
  std::map<int, int> root_of_component;
  for (int u = 0; u < nf; ++u) {
    if (!distinguished[u]) continue;
    if (!root_of_component.emplace(uf.find(u), u).second) {
      throw std::invalid_argument("two distinguished facilities in one component");
    }
  }
  for (int p = 0; p < nf; ++p) {
    const int u = order == PropagationOrder::kForward ? p : nf - 1 - p;
    root_of_component.emplace(uf.find(u), u);
  }

  auto other_end = [&](int e, int u) {
    const int a = local_facility(graph.edges[e].first);
    return a == u ? local_client(graph.edges[e].second) : a;
  };
  UntightGraph out = graph;
  out.weights.assign(graph.edges.size(), 0);
  for (const auto& [component, root] : root_of_component) {
    // Iterative DFS giving a post-order and each node's parent edge.
    std::vector<int> parent_edge(nodes, -1), post;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    std::vector<bool> seen(nodes, false);
    seen[root] = true;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < adjacency[u].size()) {
        const int e = adjacency[u][next++];
        const int v = other_end(e, u);
        if (seen[v]) continue;
        seen[v] = true;
        parent_edge[v] = e;
        stack.emplace_back(v, 0);
        continue;
      }
      post.push_back(u);
      stack.pop_back();
    }
    for (int u : post) {
      std::int64_t children = 0;
      for (int e : adjacency[u]) {
        if (e != parent_edge[u]) children += out.weights[e];
      }
      if (u == root) {
        if (distinguished[u] ? children > s : children != s) return std::nullopt;
        continue;
      }
      std::int64_t w;
      if (u >= nf) {
        const std::int64_t rest = demands[clients[u - nf]] - children;
        if (rest <= 0) return std::nullopt;
        w = rest % s;
        if (w == 0) return std::nullopt;
      } else {
        w = s - children;
        if (w <= 0 || w >= s) return std::nullopt;
      }
      out.weights[parent_edge[u]] = w;
    }
  }
  return out;
}

UntightAudit audit_untight(const Instance& inst, const FlowMatrix& flow) {
  UntightAudit audit;
  const int n = inst.num_facilities();
  const int m = inst.num_clients();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const std::int64_t x = flow.at(i, j);
      if (x > 0 && x < inst.facility(i).capacity) {
        audit.graph.edges.emplace_back(i, j);
        audit.graph.weights.push_back(x);
      }
    }
  }
  UnionFind uf(n + m);
  for (const auto& [i, j] : audit.graph.edges) {
    if (!uf.unite(i, n + j)) audit.acyclic = false;
  }
  const std::vector<int> members = audit.graph.facilities();
  std::map<int, int> not_full;
  for (int i : members) {
    const std::int64_t load = flow.row_sum(i);
    if (load > 0 && load < inst.facility(i).capacity) {
      audit.graph.distinguished.push_back(i);
      ++not_full[uf.find(i)];
    }
  }
  for (const auto& [component, count] : not_full) {
    audit.max_not_full_per_component = std::max(audit.max_not_full_per_component, count);
  }
  audit.num_facilities = static_cast<int>(members.size());
  audit.num_edges = static_cast<int>(audit.graph.edges.size());
  return audit;
}

namespace {

class UniformSearch {
 public:
  UniformSearch(const Instance& inst, int k) : inst_(inst), k_(k), s_(inst.facility(0).capacity) {
    for (const auto& c : inst.clients()) demands_.push_back(c.demand);
  }

  void run() {
    const int n = inst_.num_facilities();
    const int m = inst_.num_clients();
    consider({}, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      const int size = std::popcount(mask);
      if (size > m || size > k_) continue;
      std::vector<int> chosen;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) chosen.push_back(i);
      }
      std::set<std::uint64_t> seen;
      enumerate_spanning_trees(size, m, [&](const BipartiteEdges& tree) {
        const int t = static_cast<int>(tree.size());
        for (std::uint32_t sub = 1; sub < (1u << t); ++sub) {
          std::uint64_t key = 0;
          std::uint32_t covered = 0;
          for (int e = 0; e < t; ++e) {
            if (!((sub >> e) & 1u)) continue;
            key |= std::uint64_t{1} << (tree[e].first * m + tree[e].second);
            covered |= 1u << tree[e].first;
          }
          if (covered != (1u << size) - 1 || !seen.insert(key).second) continue;
          UntightGraph graph;
          for (int e = 0; e < t; ++e) {
            if ((sub >> e) & 1u) graph.edges.emplace_back(chosen[tree[e].first], tree[e].second);
          }
          std::sort(graph.edges.begin(), graph.edges.end());
          try_distinguished(graph, mask);
        }
      });
    }
  }

  std::optional<ExactUniformResult> take() { return std::move(best_); }

 private:
  // Every choice of at most one distinguished facility per component.
  void try_distinguished(UntightGraph& graph, std::uint32_t mask) {
    const int n = inst_.num_facilities();
    UnionFind uf(n + inst_.num_clients());
    for (const auto& [i, j] : graph.edges) uf.unite(i, n + j);
    std::map<int, std::vector<int>> groups;
    for (int i : graph.facilities()) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> options;
    for (auto& [root, members] : groups) options.push_back(members);
    std::vector<int> pick(options.size(), -1);
    for (;;) {
      graph.distinguished.clear();
      for (size_t c = 0; c < options.size(); ++c) {
        if (pick[c] >= 0) graph.distinguished.push_back(options[c][pick[c]]);
      }
      if (auto weighted = propagate_weights(graph, demands_, s_)) {
        ++candidates_;
        consider(*weighted, mask);
      }
      size_t c = 0;
      while (c < options.size() && ++pick[c] == static_cast<int>(options[c].size())) pick[c++] = -1;
      if (c == options.size()) return;
    }
  }

  void consider(const UntightGraph& graph, std::uint32_t mask) {
    const int n = inst_.num_facilities();
    const int m = inst_.num_clients();
    std::vector<std::int64_t> units(demands_);
    Rational cost = 0;
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto [i, j] = graph.edges[e];
      units[j] -= graph.weights[e];
      cost += inst_.unit_cost(i, j) * graph.weights[e];
    }
    for (int j = 0; j < m; ++j) {
      if (units[j] < 0 || units[j] % s_ != 0) return;
      units[j] /= s_;
    }
    std::vector<int> pool;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        cost += inst_.facility(i).opening_cost;
      } else {
        pool.push_back(i);
      }
    }
    const int remaining_k = k_ - std::popcount(mask);
    auto key = std::make_tuple(mask, units, remaining_k);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, solve_divisible_residue(inst_, pool, units, remaining_k)).first;
    }
    if (!it->second) return;
    cost += it->second->cost;
    if (best_ && cost >= best_->cost) return;

    ExactUniformResult result;
    result.solution = IntegralSolution(n, m);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto [i, j] = graph.edges[e];
      result.solution.open[i] = true;
      result.solution.at(i, j) = graph.weights[e];
    }
    for (const auto& [i, j] : it->second->pairs) {
      result.solution.open[i] = true;
      result.solution.at(i, j) = s_;
    }
    result.cost = std::move(cost);
    best_ = std::move(result);
  }

  const Instance& inst_;
  int k_;
  std::int64_t s_;
  std::vector<std::int64_t> demands_;
  std::map<std::tuple<std::uint32_t, std::vector<std::int64_t>, int>, std::optional<DivisibleAssignment>> cache_;
  std::optional<ExactUniformResult> best_;
  std::int64_t candidates_ = 0;

 public:
  [[nodiscard]] std::int64_t candidates() const { return candidates_; }
};

}  // namespace

std::optional<ExactUniformResult> exact_uniform_solve(const Instance& inst, int k, const ExactUniformConfig& config) {
  if (inst.num_facilities() == 0 || !inst.uniform_capacity()) {
    throw std::invalid_argument("exact uniform solver needs uniform capacities");
  }
  if (inst.num_clients() > config.max_clients) {
    throw std::invalid_argument("exact uniform solver limited to " + std::to_string(config.max_clients) +
                                " clients, got " + std::to_string(inst.num_clients()));
  }
  if (inst.num_facilities() > 31) throw std::invalid_argument("too many facilities for subset enumeration");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  UniformSearch search(inst, k);
  search.run();
  auto result = search.take();
  if (result) result->candidates = search.candidates();
  return result;
}

}  // namespace caploc
