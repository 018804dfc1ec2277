#include "caploc/consolidation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "caploc/exactlp.hpp"
#include "caploc/flow.hpp"
#include "caploc/oracle.hpp"
#include "caploc/rng.hpp"

namespace caploc {

Rational StarSet::service_cost(const Instance& inst) const {
  Rational total = 0;
  for (int j = 0; j < inst.num_clients(); ++j) total += inst.unit_cost(assignment[j], j) * inst.client(j).demand;
  return total;
}

std::vector<std::pair<int, std::vector<int>>> StarSet::stars() const {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int c : centers) {
    std::vector<int> members;
    for (size_t j = 0; j < assignment.size(); ++j) {
      if (assignment[j] == c) members.push_back(static_cast<int>(j));
    }
    if (!members.empty()) out.emplace_back(c, std::move(members));
  }
  return out;
}

namespace {

std::int64_t budget_for(const Instance& inst, const LocalSearchConfig& config) {
  return config.move_budget.value_or(
      std::max<std::int64_t>(1, std::int64_t{10} * inst.num_facilities() * inst.num_clients()));
}

Rational median_cost(const Instance& inst, const std::vector<bool>& open) {
  Rational total = 0;
  for (int j = 0; j < inst.num_clients(); ++j) {
    const Rational* best = nullptr;
    for (int i = 0; i < inst.num_facilities(); ++i) {
      if (open[i] && (!best || inst.unit_cost(i, j) < *best)) best = &inst.unit_cost(i, j);
    }
    total += *best * inst.client(j).demand;
  }
  return total;
}

StarSet nearest_assignment(const Instance& inst, const std::vector<bool>& open) {
  StarSet out;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    if (open[i]) out.centers.push_back(i);
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    int best = out.centers.front();
    for (int c : out.centers) {
      if (inst.unit_cost(c, j) < inst.unit_cost(best, j)) best = c;
    }
    out.assignment.push_back(best);
  }
  return out;
}

// Calls fn on each w-subset of items in lexicographic order until it
// returns true.
bool any_combination(const std::vector<int>& items, int w, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> pick;
  std::function<bool(size_t)> go = [&](size_t from) {
    if (static_cast<int>(pick.size()) == w) return fn(pick);
    for (size_t p = from; p + (w - pick.size()) <= items.size(); ++p) {
      pick.push_back(items[p]);
      if (go(p + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return go(0);
}

}  // namespace

StarSet ukm_local_search(const Instance& inst, int k, const LocalSearchConfig& config) {
  const int n = inst.num_facilities();
  if (k < 1 || k > n) throw std::invalid_argument("k-median bound must lie in [1, n]");
  if (config.swap_width < 1) throw std::invalid_argument("swap width must be at least 1");
  if (inst.num_clients() == 0) throw std::invalid_argument("no clients");

  // Farthest-point seeding from a seeded first center.
  SplitRng rng = SplitRng(config.seed).split("ukm-seed");
  std::vector<bool> open(n, false);
  open[rng.uniform(0, n - 1)] = true;
  for (int size = 1; size < k; ++size) {
    int pick = -1;
    Rational pick_gap;
    for (int i = 0; i < n; ++i) {
      if (open[i]) continue;
      std::optional<Rational> gap;
      for (int c = 0; c < n; ++c) {
        if (open[c] && (!gap || inst.distance(i, c) < *gap)) gap = inst.distance(i, c);
      }
      if (pick < 0 || *gap > pick_gap) {
        pick = i;
        pick_gap = *gap;
      }
    }
    open[pick] = true;
  }

  Rational current = median_cost(inst, open);
  const std::int64_t budget = budget_for(inst, config);
  for (std::int64_t moves = 0; moves < budget; ++moves) {
    std::vector<int> inside, outside;
    for (int i = 0; i < n; ++i) (open[i] ? inside : outside).push_back(i);
    bool improved = false;
    const int widest = std::min({config.swap_width, k, n - k});
    for (int w = 1; w <= widest && !improved; ++w) {
      improved = any_combination(inside, w, [&](const std::vector<int>& out) {
        return any_combination(outside, w, [&](const std::vector<int>& in) {
          std::vector<bool> next = open;
          for (int i : out) next[i] = false;
          for (int i : in) next[i] = true;
          Rational cost = median_cost(inst, next);
          if (cost >= current) return false;
          open = std::move(next);
          current = std::move(cost);
          return true;
        });
      });
    }
    if (!improved) break;
  }
  return nearest_assignment(inst, open);
}

BifactorResult ufl_bifactor_local_search(const Instance& inst, const Rational& f, const Rational& gamma, int k,
                                         const LocalSearchConfig& config) {
  const int n = inst.num_facilities();
  if (f <= 0) throw std::invalid_argument("opening cost must be positive");
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  if (k < 1 || k > n) throw std::invalid_argument("k-median bound must lie in [1, n]");
  if (inst.num_clients() == 0) throw std::invalid_argument("no clients");

  BifactorResult result;
  const FacilityLp model = build_ukm_lp(inst, k);
  const LpResult lp = solve_vertex(model.lp);
  if (!lp.optimal()) throw std::logic_error("k-median relaxation not solved");
  // y_i = max_j x_ij keeps the point optimal and feasible.
  Rational opened = 0;
  for (int i = 0; i < n; ++i) {
    Rational y = 0;
    for (int j = 0; j < inst.num_clients(); ++j) y = std::max(y, lp.solution.values[model.x(i, j)]);
    opened += y;
  }
  result.lp_service_cost = lp.solution.objective_value;
  result.lp_facility_cost = f * opened;
  result.scale = gamma * result.lp_service_cost / result.lp_facility_cost;
  const Rational scaled_f = result.scale * f;

  SplitRng rng = SplitRng(config.seed).split("ufl-seed");
  std::vector<bool> open(n, false);
  open[rng.uniform(0, n - 1)] = true;
  int count = 1;
  auto total = [&](const std::vector<bool>& set, int size) -> Rational {
    return scaled_f * size + median_cost(inst, set);
  };
  Rational current = total(open, count);
  const std::int64_t budget = budget_for(inst, config);
  for (std::int64_t moves = 0; moves < budget; ++moves) {
    bool improved = false;
    auto attempt = [&](std::vector<bool> next, int size) {
      Rational cost = total(next, size);
      if (cost >= current) return false;
      open = std::move(next);
      count = size;
      current = std::move(cost);
      return true;
    };
    for (int i = 0; i < n && !improved; ++i) {
      if (open[i]) continue;
      std::vector<bool> next = open;
      next[i] = true;
      improved = attempt(std::move(next), count + 1);
    }
    for (int i = 0; i < n && !improved && count > 1; ++i) {
      if (!open[i]) continue;
      std::vector<bool> next = open;
      next[i] = false;
      improved = attempt(std::move(next), count - 1);
    }
    for (int i = 0; i < n && !improved; ++i) {
      if (!open[i]) continue;
      for (int t = 0; t < n && !improved; ++t) {
        if (open[t]) continue;
        std::vector<bool> next = open;
        next[i] = false;
        next[t] = true;
        improved = attempt(std::move(next), count);
      }
    }
    if (!improved) break;
  }
  result.stars = nearest_assignment(inst, open);
  result.facility_cost = f * count;
  result.service_cost = result.stars.service_cost(inst);
  return result;
}

ConsolidatedInstance consolidate(const Instance& inst, const StarSet& stars) {
  ConsolidatedInstance out;
  out.stars = stars.stars();
  const int n = inst.num_facilities();
  const int sites = n + static_cast<int>(out.stars.size());
  std::vector<Client> clients;
  for (const auto& [center, members] : out.stars) {
    std::int64_t demand = 0;
    for (int j : members) demand += inst.client(j).demand;
    clients.push_back({demand});
  }
  auto site_of = [&](int a) { return a < n ? a : out.stars[a - n].first; };
  std::vector<Rational> metric(static_cast<size_t>(sites) * sites);
  for (int a = 0; a < sites; ++a) {
    for (int b = 0; b < sites; ++b) metric[static_cast<size_t>(a) * sites + b] = inst.distance(site_of(a), site_of(b));
  }
  out.instance = Instance(inst.facilities(), std::move(clients), std::move(metric), inst.k());
  return out;
}

namespace {

void require_metric(const Instance& inst) {
  const ValidationReport report = validate_instance(inst, true);
  if (!report.ok()) throw std::invalid_argument("invalid instance: " + report.issues.front());
}

ConsolidationRound run_round(const Instance& inst, int l, StarSet stars) {
  ConsolidationRound round;
  round.l = l;
  round.star_cost = stars.service_cost(inst);
  round.stars = std::move(stars);
  const ConsolidatedInstance merged = consolidate(inst, round.stars);
  const FacilityLp model = build_ckfl_lp(merged.instance, l, Cardinality::kEquality);
  const LpResult lp = solve_vertex(model.lp);
  if (!lp.optimal()) return round;
  round.lp_feasible = true;
  FractionalSolution frac = extract_solution(model, lp.solution);
  round.fractional_before = static_cast<int>(frac.fractional_facilities().size());
  if (inst.uniform_capacity()) reduce_fractional_uniform(merged.instance, frac);
  round.fractional_after = static_cast<int>(frac.fractional_facilities().size());
  round.lp_cost = frac.cost(merged.instance);
  round.lp_service_cost_i2 = 0;
  for (int i = 0; i < merged.instance.num_facilities(); ++i) {
    for (int j = 0; j < merged.instance.num_clients(); ++j) {
      round.lp_service_cost_i2 += merged.instance.unit_cost(i, j) * frac.at(i, j);
    }
  }
  std::vector<bool> open(inst.num_facilities());
  for (int i = 0; i < inst.num_facilities(); ++i) open[i] = frac.y[i] > 0;
  auto flow = serve_with_open_set(inst, open);
  if (!flow) throw std::logic_error("opened facilities cannot carry the moved-back demand");
  round.transport_service_cost = flow->cost;
  round.solution = to_solution(inst, *flow);
  round.cost = evaluate(inst, *round.solution).total;
  round.opened = round.solution->open_count();
  return round;
}

std::optional<ConsolidationResult> pick_best(std::vector<ConsolidationRound> rounds) {
  ConsolidationResult result;
  for (const auto& round : rounds) {
    if (!round.solution) continue;
    if (result.best_l == 0 || round.cost < result.cost) {
      result.best_l = round.l;
      result.cost = round.cost;
      result.solution = *round.solution;
    }
  }
  if (result.best_l == 0) return std::nullopt;
  result.rounds = std::move(rounds);
  return result;
}

}  // namespace

std::optional<ConsolidationResult> ckfl_uniform_f_solve(const Instance& inst, int k, const ConsolidationConfig& config) {
  if (!inst.uniform_opening_cost()) throw std::invalid_argument("consolidation needs uniform opening costs");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  require_metric(inst);
  std::vector<ConsolidationRound> rounds;
  for (int l = 1; l <= std::min(k, inst.num_facilities()); ++l) {
    rounds.push_back(run_round(inst, l, ukm_local_search(inst, l, config.search)));
  }
  return pick_best(std::move(rounds));
}

std::optional<ConsolidationResult> cfl_uniform_f_solve(const Instance& inst, const ConsolidationConfig& config) {
  if (!inst.uniform_opening_cost() || inst.num_facilities() == 0) {
    throw std::invalid_argument("consolidation needs uniform opening costs");
  }
  const Rational f = inst.facility(0).opening_cost;
  if (f <= 0) throw std::invalid_argument("CFL pipeline needs a positive opening cost");
  require_metric(inst);
  std::vector<ConsolidationRound> rounds;
  for (int l = 1; l <= inst.num_facilities(); ++l) {
    BifactorResult bifactor = ufl_bifactor_local_search(inst, f, config.gamma, l, config.search);
    ConsolidationRound round = run_round(inst, l, std::move(bifactor.stars));
    round.bifactor_facility_cost = bifactor.facility_cost;
    round.lp_facility_cost = bifactor.lp_facility_cost;
    round.lp_service_cost = bifactor.lp_service_cost;
    rounds.push_back(std::move(round));
  }
  return pick_best(std::move(rounds));
}

bool RatioReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds(); });
}

std::string RatioReport::to_text() const {
  std::ostringstream out;
  auto ratio = [](const std::optional<Rational>& r) { return r ? to_string(*r) : std::string("unbounded"); };
  out << "reference_l=" << reference_l << "\n";
  out << "opt_i0=" << to_string(opt_i0) << "\nopt_i1=" << to_string(opt_i1) << "\nopt_i2=" << to_string(opt_i2)
      << "\n";
  if (alpha || (!beta && !delta)) out << "alpha=" << ratio(alpha) << "\n";
  if (beta || delta) out << "beta=" << ratio(beta) << "\ndelta=" << ratio(delta) << "\n";
  out << "bound_factor=" << ratio(bound_factor) << "\n";
  for (const auto& c : checks) {
    out << "check." << c.name << "=" << (c.holds() ? "pass" : "FAIL") << " " << to_string(c.lhs)
        << " <= " << to_string(c.rhs) << "\n";
  }
  return out.str();
}

namespace {

// numerator / denominator with 0/0 read as `zero_over_zero`.
std::optional<Rational> achieved(const Rational& numerator, const Rational& denominator,
                                 const Rational& zero_over_zero) {
  if (denominator == 0) return numerator == 0 ? std::optional<Rational>(zero_over_zero) : std::nullopt;
  return Rational(numerator / denominator);
}

// Fills the shared part of both reports for round l = open count of opt0.
const ConsolidationRound& common_chain(const Instance& inst, const ConsolidationResult& result,
                                       const OracleResult& opt0, RatioReport& report) {
  report.reference_l = opt0.witness.open_count();
  report.opt_i0 = opt0.optimum;
  const int l = report.reference_l;
  const ConsolidationRound& round = result.round(l);
  report.opt_i1 = brute_force_ukm(inst, l).optimum;
  const Rational f = inst.facility(0).opening_cost;
  if (!round.solution) {
    report.checks.push_back({"reference_round_feasible", 1, 0});
    return round;
  }
  const ConsolidatedInstance merged = consolidate(inst, round.stars);
  auto opt2 = brute_force_ckfl(merged.instance, l, CardinalityMode::kExactly);
  if (!opt2) {
    report.checks.push_back({"reference_i2_feasible", 1, 0});
    return round;
  }
  report.opt_i2 = opt2->optimum;
  report.checks.push_back({"lp_le_opt_i2", round.lp_cost, report.opt_i2});
  report.checks.push_back({"opt_i2_le_opt_i0_plus_star", report.opt_i2, report.opt_i0 + round.star_cost});
  report.checks.push_back({"opt_i1_plus_lf_le_opt_i0", report.opt_i1 + f * l, report.opt_i0});
  report.checks.push_back(
      {"move_back_le_lp_service_plus_star", round.transport_service_cost, round.lp_service_cost_i2 + round.star_cost});
  return round;
}

}  // namespace

RatioReport ckfl_ratio_report(const Instance& inst, int k, const ConsolidationResult& result) {
  auto opt0 = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
  if (!opt0) throw std::invalid_argument("instance is infeasible");
  RatioReport report;
  const ConsolidationRound& round = common_chain(inst, result, *opt0, report);
  const Rational f = inst.facility(0).opening_cost;
  const int l = report.reference_l;
  if (round.solution) {
    report.checks.push_back({"round_cost_le_star_plus_lp_plus_lf", round.cost, round.star_cost + round.lp_cost + f * l});
  }
  report.alpha = achieved(round.star_cost, report.opt_i1, 1);
  if (report.alpha) {
    report.bound_factor = 1 + 2 * *report.alpha;
    report.checks.push_back({"cost_le_bound_times_opt_i0", result.cost, *report.bound_factor * report.opt_i0});
  }
  const int cap = inst.uniform_capacity() ? 2 * k - 1 : 2 * k;
  report.checks.push_back({"opened_le_cardinality_cap", result.solution.open_count(), cap});
  return report;
}

RatioReport cfl_ratio_report(const Instance& inst, const ConsolidationResult& result) {
  auto opt0 = brute_force_cfl(inst);
  if (!opt0) throw std::invalid_argument("instance is infeasible");
  RatioReport report;
  const ConsolidationRound& round = common_chain(inst, result, *opt0, report);
  const Rational f = inst.facility(0).opening_cost;
  if (round.solution) {
    const Rational centers_cost = f * static_cast<long>(round.stars.centers.size());
    report.checks.push_back({"round_cost_le_star_plus_lp_plus_centers_f", round.cost,
                             round.star_cost + round.lp_cost + centers_cost});
  }
  if (round.lp_service_cost && round.lp_facility_cost) {
    report.checks.push_back({"lp_service_le_opt_i1", *round.lp_service_cost, report.opt_i1});
    report.beta = achieved(round.star_cost, *round.lp_service_cost, 0);
    report.delta = achieved(*round.bifactor_facility_cost, *round.lp_facility_cost, 0);
  }
  if (report.beta && report.delta) {
    report.bound_factor = std::max(Rational(2 * *report.beta + 1), Rational(*report.delta + 1));
    report.checks.push_back({"cost_le_bound_times_opt_i0", result.cost, *report.bound_factor * report.opt_i0});
  }
  return report;
}

}  // namespace caploc
