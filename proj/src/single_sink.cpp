#include "caploc/single_sink.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "caploc/exactlp.hpp"

namespace caploc {

DpTable::DpTable(std::vector<DpItem> items, int g_max, std::int64_t p_max)
    : items_(std::move(items)), g_max_(g_max), p_max_(p_max) {
  if (g_max < 0 || p_max < 0) throw std::invalid_argument("dp bounds must be nonnegative");
  for (const auto& item : items_) {
    if (item.capacity < 0 || item.scaled_cost < 0) throw std::invalid_argument("dp items must be nonnegative");
  }
  const int n = num_items();
  table_.assign(static_cast<size_t>(g_max + 1) * (n + 1) * (p_max + 1), kUnreachable);
  for (int g = 0; g <= g_max; ++g) table_[index(g, 0, 0)] = 0;
  for (int b = 0; b < n; ++b) {
    const DpItem& item = items_[b];
    for (int g = 0; g <= g_max; ++g) {
      for (std::int64_t p = 0; p <= p_max; ++p) {
        std::int64_t best = table_[index(g, b, p)];
        if (g > 0 && p >= item.scaled_cost) {
          const std::int64_t prev = table_[index(g - 1, b, p - item.scaled_cost)];
          if (prev != kUnreachable && prev + item.capacity > best) best = prev + item.capacity;
        }
        table_[index(g, b + 1, p)] = best;
      }
    }
  }
}

size_t DpTable::index(int g, int b, std::int64_t p) const {
  return (static_cast<size_t>(g) * (num_items() + 1) + b) * (p_max_ + 1) + static_cast<size_t>(p);
}

std::int64_t DpTable::value(int g, int b, std::int64_t p) const {
  if (g < 0 || g > g_max_ || b < 0 || b > num_items() || p < 0 || p > p_max_) {
    throw std::out_of_range("dp table index out of range");
  }
  return table_[index(g, b, p)];
}

std::vector<int> DpTable::witness(int g, int b, std::int64_t p) const {
  std::vector<int> chosen;
  if (!reachable(g, b, p)) return chosen;
  while (b > 0) {
    if (table_[index(g, b - 1, p)] == table_[index(g, b, p)]) {
      --b;
      continue;
    }
    --b;
    chosen.push_back(b);
    p -= items_[b].scaled_cost;
    --g;
  }
  std::reverse(chosen.begin(), chosen.end());
  return chosen;
}

DpTable dp_solve(std::vector<DpItem> items, int g_max, std::int64_t p_max) {
  return DpTable(std::move(items), g_max, p_max);
}

namespace {

void require_single_client(const Instance& inst, int k) {
  if (inst.num_clients() != 1) throw std::invalid_argument("single-sink solver needs exactly one client");
  if (inst.num_facilities() == 0) throw std::invalid_argument("no facilities");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

SingleSinkResult make_result(const Instance& inst, const std::vector<Rational>& served) {
  SingleSinkResult result;
  result.solution = IntegralSolution(inst.num_facilities(), 1);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    result.solution.at(i, 0) = served[i];
    result.solution.open[i] = sgn(served[i]) > 0;
  }
  result.cost = evaluate(inst, result.solution).total;
  return result;
}

void keep_better(std::optional<SingleSinkResult>& best, SingleSinkResult candidate) {
  if (!best || candidate.cost < best->cost) best = std::move(candidate);
}

}  // namespace

std::optional<SingleSinkResult> fptas_solve(const Instance& inst, int k, const Rational& epsilon) {
  require_single_client(inst, k);
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  const int n = inst.num_facilities();
  const std::int64_t d = inst.client(0).demand;
  const int kk = std::min(k, n);

  std::vector<Rational> big_c(n);
  for (int i = 0; i < n; ++i) {
    big_c[i] = inst.unit_cost(i, 0) * inst.facility(i).capacity + inst.facility(i).opening_cost;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return big_c[a] < big_c[b]; });

  std::optional<SingleSinkResult> best;
  for (int tpos = 0; tpos < n; ++tpos) {
    const int t = order[tpos];
    const std::int64_t s_t = inst.facility(t).capacity;
    for (int r = 1; r <= n; ++r) {
      std::vector<int> active;
      for (int pos = 0; pos < r; ++pos) {
        if (pos != tpos) active.push_back(order[pos]);
      }
      Rational w = 1;
      std::int64_t p_max = 0;
      if (!active.empty()) {
        Rational c0 = 0;
        for (int i : active) c0 = std::max(c0, big_c[i]);
        if (sgn(c0) > 0) w = epsilon * c0 / kk;
        p_max = (kk - 1) * to_int64(floor_of(c0 / w));
      }
      std::vector<DpItem> items;
      for (int i : active) items.push_back({inst.facility(i).capacity, to_int64(floor_of(big_c[i] / w))});
      const DpTable table = dp_solve(std::move(items), kk - 1, p_max);
      const Rational c_bar = inst.unit_cost(t, 0) / w;
      const Rational f_bar = inst.facility(t).opening_cost / w;
      const int b = table.num_items();

      // Minimum scaled cost over all (g, p); a set whose capacity already
      // exceeds d is served cheapest-first with t closed, at scaled cost p.
      std::optional<Rational> best_scaled;
      int best_g = 0;
      std::int64_t best_p = 0;
      for (int g = 0; g <= kk - 1; ++g) {
        for (std::int64_t p = 0; p <= p_max; ++p) {
          const std::int64_t cap = table.value(g, b, p);
          if (cap == DpTable::kUnreachable) continue;
          Rational scaled = p;
          if (cap <= d) {
            if (d - cap > s_t) continue;
            scaled += (d - cap) * c_bar + f_bar;
          }
          if (!best_scaled || scaled < *best_scaled) {
            best_scaled = std::move(scaled);
            best_g = g;
            best_p = p;
          }
        }
      }
      if (!best_scaled) continue;
      std::vector<int> chosen;
      for (int item : table.witness(best_g, b, best_p)) chosen.push_back(active[item]);
      std::vector<Rational> served(n);
      const std::int64_t cap = table.value(best_g, b, best_p);
      if (cap <= d) {
        for (int i : chosen) served[i] = inst.facility(i).capacity;
        served[t] = d - cap;
      } else {
        std::stable_sort(chosen.begin(), chosen.end(),
                         [&](int a, int c) { return inst.unit_cost(a, 0) < inst.unit_cost(c, 0); });
        std::int64_t left = d;
        for (int i : chosen) {
          const std::int64_t amount = std::min(left, inst.facility(i).capacity);
          served[i] = amount;
          left -= amount;
        }
      }
      keep_better(best, make_result(inst, served));
    }
  }
  for (int pos = 0; pos < n; ++pos) {
    const int i = order[pos];
    if (inst.facility(i).capacity < d) continue;
    std::vector<Rational> served(n);
    served[i] = d;
    keep_better(best, make_result(inst, served));
  }
  return best;
}

namespace {

struct VertexPoint {
  std::vector<Rational> x;
  std::vector<Rational> y;
};

std::optional<VertexPoint> solve_restricted(const Instance& inst, int k, const std::vector<bool>& closed,
                                            int forced_open) {
  FacilityLp model = build_sckfl_lp(inst, k, Cardinality::kEquality);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (closed[i]) model.lp.set_bounds(model.y(i), 0, Rational(0));
  }
  if (forced_open >= 0) model.lp.set_bounds(model.y(forced_open), 1, Rational(1));
  const LpResult result = solve_vertex(model.lp);
  if (!result.optimal()) return std::nullopt;
  VertexPoint point;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    point.x.push_back(result.solution.values[model.x(i, 0)]);
    point.y.push_back(result.solution.values[model.y(i)]);
  }
  return point;
}

std::vector<int> fractional_indices(const std::vector<Rational>& y) {
  std::vector<int> out;
  for (size_t i = 0; i < y.size(); ++i) {
    if (strictly_between_zero_and_one(y[i])) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::optional<SingleSinkResult> build_exact_k(const Instance& inst, const std::vector<Rational>& x,
                                              const std::vector<Rational>& y) {
  SingleSinkResult result;
  result.solution = IntegralSolution(inst.num_facilities(), 1);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    result.solution.at(i, 0) = x[i];
    result.solution.open[i] = y[i] == 1;
  }
  result.cost = evaluate(inst, result.solution).total;
  return result;
}

class TwoApprox {
 public:
  TwoApprox(const Instance& inst, int k) : inst_(inst), k_(k) {}

  std::optional<SingleSinkResult> solve(const std::vector<bool>& closed, int depth) {
    max_depth_ = std::max(max_depth_, depth);
    const int n = inst_.num_facilities();
    const auto root = solve_restricted(inst_, k_, closed, -1);
    if (!root) return std::nullopt;
    const std::vector<int> frac = fractional_indices(root->y);
    if (frac.empty()) return build_exact_k(inst_, root->x, root->y);
    if (frac.size() != 2) throw std::logic_error("vertex with a fractional count other than 0 or 2");

    int i1 = frac[0];
    int i2 = frac[1];
    if (inst_.facility(i2).capacity > inst_.facility(i1).capacity) std::swap(i1, i2);

    std::vector<Rational> x1 = root->x;
    std::vector<Rational> y1 = root->y;
    x1[i1] += x1[i2];
    x1[i2] = 0;
    y1[i1] = 1;
    y1[i2] = 0;
    auto merged = build_exact_k(inst_, x1, y1);

    std::vector<bool> without = closed;
    without[i1] = true;
    auto fallback = solve(without, depth + 1);

    int available = 0;
    for (int i = 0; i < n; ++i) available += closed[i] ? 0 : 1;
    std::vector<bool> excluded = closed;
    int excluded_count = 0;
    while (excluded_count <= available - k_) {
      const auto face = solve_restricted(inst_, k_, excluded, i1);
      if (!face) break;
      const std::vector<int> face_frac = fractional_indices(face->y);
      if (face_frac.empty()) {
        auto integral = build_exact_k(inst_, face->x, face->y);
        return best_of({std::move(integral), std::move(fallback), std::move(merged)});
      }
      if (face->x[i1] == inst_.facility(i1).capacity) break;
      if (face_frac.size() != 2) throw std::logic_error("face vertex with a fractional count other than 0 or 2");
      if (sgn(face->x[i1]) != 0) throw std::logic_error("face vertex with partially used forced facility");
      int i3 = face_frac[0];
      int i4 = face_frac[1];
      if (inst_.facility(i4).opening_cost < inst_.facility(i3).opening_cost) std::swap(i3, i4);
      std::vector<Rational> y2 = face->y;
      y2[i1] = 0;
      y2[i3] = 1;
      y2[i4] = 1;
      auto swapped = build_exact_k(inst_, face->x, y2);
      if (!fallback || swapped->cost < fallback->cost) fallback = std::move(swapped);
      excluded[i4] = true;
      ++excluded_count;
    }
    return best_of({std::move(fallback), std::move(merged)});
  }

  [[nodiscard]] int max_depth() const { return max_depth_; }

 private:
  static std::optional<SingleSinkResult> best_of(std::vector<std::optional<SingleSinkResult>> candidates) {
    std::optional<SingleSinkResult> best;
    for (auto& c : candidates) {
      if (c && (!best || c->cost < best->cost)) best = std::move(c);
    }
    return best;
  }

  const Instance& inst_;
  int k_;
  int max_depth_ = 0;
};

}  // namespace

std::optional<SingleSinkResult> two_approx_solve(const Instance& inst, int k) {
  require_single_client(inst, k);
  TwoApprox solver(inst, k);
  auto result = solver.solve(std::vector<bool>(inst.num_facilities(), false), 0);
  if (result) result->recursion_depth = solver.max_depth();
  return result;
}

}  // namespace caploc
