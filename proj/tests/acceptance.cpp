// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caploc/consolidation.hpp"
#include "caploc/exactlp.hpp"
#include "caploc/flow.hpp"
#include "caploc/model.hpp"
#include "caploc/oracle.hpp"
#include "caploc/rational.hpp"
#include "caploc/rng.hpp"
#include "caploc/single_sink.hpp"
#include "caploc/uniform_exact.hpp"
#include "support/oracles.hpp"

namespace {

using namespace caploc;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 3) failures.push_back(std::move(what));
  }
};

struct Criterion {
  int id;
  std::string name;
  std::optional<double> limit_ms;
  std::function<Outcome()> run;
};

Outcome integrality_gap() {
  Outcome out;
  const Instance inst = gen_figure1(10000, 1000000);
  auto mip = brute_force_ckfl(inst, 2, CardinalityMode::kAtMost);
  auto independent = testing::single_sink_optimum(inst, 2, false);
  const FacilityLp model = build_sckfl_lp(inst, 2, Cardinality::kInequality);
  const LpResult lp = solve_vertex(model.lp);
  if (!mip || !independent || !lp.optimal()) {
    out.fail("figure instance reported infeasible");
    return out;
  }
  if (mip->optimum != 10001) out.fail("MIP optimum " + to_string(mip->optimum));
  if (*independent != mip->optimum) out.fail("greedy reference disagrees: " + to_string(*independent));
  const Rational expected = make_rational(100000000, 999999);
  if (lp.solution.objective_value != expected) out.fail("LP optimum " + to_string(lp.solution.objective_value));
  const Rational gap = mip->optimum / lp.solution.objective_value;
  if (!(gap > 99)) out.fail("gap " + to_decimal(gap));
  out.detail = "MIP=" + to_string(mip->optimum) + " LP=" + to_string(lp.solution.objective_value) +
               " gap=" + to_decimal(gap, 8);
  return out;
}

Outcome fptas_guarantee() {
  Outcome out;
  const std::vector<Rational> epsilons = {1, make_rational(1, 2), make_rational(1, 10)};
  int instances = 0;
  int comparisons = 0;
  for (std::uint64_t seed = 1; instances < 210; ++seed) {
    const int n = 1 + static_cast<int>(seed % 12);
    const int k = 1 + static_cast<int>((seed / 12) % 4);
    const Instance inst = testing::random_single_sink(seed, n, k);
    auto oracle = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
    auto greedy = testing::single_sink_optimum(inst, k, false);
    if (oracle.has_value() != greedy.has_value() || (oracle && oracle->optimum != *greedy)) {
      out.fail("seed " + std::to_string(seed) + ": oracles disagree");
      continue;
    }
    ++instances;
    for (const Rational& eps : epsilons) {
      auto got = fptas_solve(inst, k, eps);
      ++comparisons;
      if (got.has_value() != oracle.has_value()) {
        out.fail("seed " + std::to_string(seed) + ": feasibility mismatch");
        continue;
      }
      if (!got) continue;
      if (!check_feasible(inst, got->solution, k).empty() || evaluate(inst, got->solution).total != got->cost) {
        out.fail("seed " + std::to_string(seed) + ": reported solution inconsistent");
      }
      if (got->cost > (1 + eps) * oracle->optimum) {
        out.fail("seed " + std::to_string(seed) + " eps " + to_string(eps) + ": cost " + to_string(got->cost) +
                 " vs optimum " + to_string(oracle->optimum));
      }
    }
  }
  out.detail = std::to_string(instances) + " instances, " + std::to_string(comparisons) + " runs";
  return out;
}

Outcome two_approx_guarantee() {
  Outcome out;
  int instances = 0;
  int max_depth = 0;
  for (std::uint64_t seed = 1; instances < 210; ++seed) {
    const int n = 1 + static_cast<int>(seed % 10);
    const int k = 1 + static_cast<int>((seed / 10) % n);
    const Instance inst = testing::random_single_sink(seed * 7919, n, k);
    auto oracle = brute_force_ckfl(inst, k, CardinalityMode::kExactly);
    auto greedy = testing::single_sink_optimum(inst, k, true);
    if (oracle.has_value() != greedy.has_value() || (oracle && oracle->optimum != *greedy)) {
      out.fail("seed " + std::to_string(seed) + ": oracles disagree");
      continue;
    }
    ++instances;
    auto got = two_approx_solve(inst, k);
    if (got.has_value() != oracle.has_value()) {
      out.fail("seed " + std::to_string(seed) + ": feasibility mismatch");
      continue;
    }
    if (!got) continue;
    max_depth = std::max(max_depth, got->recursion_depth);
    if (got->recursion_depth > n - 1) out.fail("seed " + std::to_string(seed) + ": depth " +
                                               std::to_string(got->recursion_depth));
    if (!check_feasible(inst, got->solution, k).empty() || evaluate(inst, got->solution).total != got->cost) {
      out.fail("seed " + std::to_string(seed) + ": reported solution inconsistent");
    }
    if (got->cost > 2 * oracle->optimum) {
      out.fail("seed " + std::to_string(seed) + ": cost " + to_string(got->cost) + " vs optimum " +
               to_string(oracle->optimum));
    }
  }
  out.detail = std::to_string(instances) + " instances, max depth " + std::to_string(max_depth);
  return out;
}

Outcome vertex_structure() {
  Outcome out;
  int solves = 0;
  int refined = 0;
  SplitRng rng = SplitRng(4).split("acceptance-vertex");
  for (int t = 0; solves < 520; ++t) {
    RandomSpec spec;
    spec.seed = rng.next();
    spec.box = 15;
    spec.facilities = static_cast<int>(rng.uniform(2, 7));
    spec.clients = t % 2 == 0 ? 1 : static_cast<int>(rng.uniform(2, 4));
    const bool uniform = rng.uniform(0, 1) == 1;
    const std::int64_t s = rng.uniform(3, 10);
    spec.capacity = uniform ? IntRange{s, s} : IntRange{1, 12};
    spec.demand = {1, 8};
    const int k = static_cast<int>(rng.uniform(1, spec.facilities));
    const Instance inst = gen_random(spec);
    const int m = inst.num_clients();
    const std::string tag = "trial " + std::to_string(t);

    auto certified = [&](const FacilityLp& model, const LpResult& lp) {
      ++solves;
      if (!lp.optimal()) return false;
      if (!check_lp_solution(model.lp, lp.solution).empty()) out.fail(tag + ": LP residuals");
      if (certificate_rank(model.lp, lp.solution) != model.lp.num_variables()) out.fail(tag + ": not a vertex");
      return true;
    };

    if (m == 1) {
      const FacilityLp model = build_sckfl_lp(inst, k, Cardinality::kEquality);
      const LpResult lp = solve_vertex(model.lp);
      if (certified(model, lp)) {
        const std::vector<int> frac = fractional_support(lp.solution, model.y_index);
        if (frac.size() != 0 && frac.size() != 2) out.fail(tag + ": " + std::to_string(frac.size()) + " fractional y");
        if (frac.size() == 2) {
          for (int i = 0; i < inst.num_facilities(); ++i) {
            const Rational& x = lp.solution.values[model.x(i, 0)];
            const Rational& y = lp.solution.values[model.y(i)];
            if (x != 0 && x != inst.facility(i).capacity * y) out.fail(tag + ": partial facility " + std::to_string(i));
          }
        }
      }
    }
    const FacilityLp model = build_ckfl_lp(inst, k, Cardinality::kInequality);
    const LpResult lp = solve_vertex(model.lp);
    if (!certified(model, lp)) continue;
    FractionalSolution frac = extract_solution(model, lp.solution);
    const int before = static_cast<int>(frac.fractional_facilities().size());
    if (before > m + 1) out.fail(tag + ": " + std::to_string(before) + " fractional y at CKFL vertex");
    if (!inst.uniform_capacity()) continue;
    ++refined;
    const Rational cost = frac.cost(inst);
    reduce_fractional_uniform(inst, frac, Cardinality::kInequality);
    if (static_cast<int>(frac.fractional_facilities().size()) > m) out.fail(tag + ": refinement left too many");
    if (frac.cost(inst) > cost) out.fail(tag + ": refinement raised the cost");
    Rational opened = 0;
    for (int i = 0; i < inst.num_facilities(); ++i) {
      Rational load = 0;
      for (int j = 0; j < m; ++j) load += frac.at(i, j);
      if (frac.y[i] < 0 || frac.y[i] > 1 || load > inst.facility(i).capacity * frac.y[i]) {
        out.fail(tag + ": refined point infeasible at facility " + std::to_string(i));
      }
      opened += frac.y[i];
    }
    if (opened > k) out.fail(tag + ": refined point exceeds k");
    for (int j = 0; j < m; ++j) {
      Rational served = 0;
      for (int i = 0; i < inst.num_facilities(); ++i) served += frac.at(i, j);
      if (served != inst.client(j).demand) out.fail(tag + ": refined point misses a demand");
    }
  }
  out.detail = std::to_string(solves) + " LP solves, " + std::to_string(refined) + " refined";
  return out;
}

Outcome exact_uniform() {
  Outcome out;
  int instances = 0;
  int feasible = 0;
  for (std::uint64_t seed = 1; instances < 120; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const int m = 1 + static_cast<int>((seed / 6) % 3);
    const int k = 1 + static_cast<int>((seed / 18) % n);
    const Instance inst = testing::random_uniform_capacity(seed, n, m, k);
    ++instances;
    auto oracle = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
    auto got = exact_uniform_solve(inst, k);
    if (oracle.has_value() != got.has_value()) {
      out.fail("seed " + std::to_string(seed) + ": feasibility mismatch");
      continue;
    }
    if (!got) continue;
    ++feasible;
    if (!check_feasible(inst, got->solution, k).empty() || evaluate(inst, got->solution).total != got->cost) {
      out.fail("seed " + std::to_string(seed) + ": reported solution inconsistent");
    }
    if (got->cost != oracle->optimum) {
      out.fail("seed " + std::to_string(seed) + ": " + to_string(got->cost) + " vs " + to_string(oracle->optimum));
    }
  }
  out.detail = std::to_string(instances) + " instances, " + std::to_string(feasible) + " feasible";
  return out;
}

Outcome spanning_trees() {
  Outcome out;
  std::int64_t total = 0;
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      std::set<BipartiteEdges> seen;
      std::int64_t visits = 0;
      enumerate_spanning_trees(a, b, [&](const BipartiteEdges& tree) {
        seen.insert(tree);
        ++visits;
      });
      BigInt formula;
      BigInt part;
      mpz_ui_pow_ui(formula.get_mpz_t(), a, b - 1);
      mpz_ui_pow_ui(part.get_mpz_t(), b, a - 1);
      formula *= part;
      const std::string tag = "K_{" + std::to_string(a) + "," + std::to_string(b) + "}";
      if (static_cast<std::int64_t>(seen.size()) != visits) out.fail(tag + ": duplicate tree");
      if (BigInt(visits) != formula) out.fail(tag + ": " + std::to_string(visits) + " trees");
      if (static_cast<std::int64_t>(testing::spanning_trees_by_subsets(a, b).size()) != visits) {
        out.fail(tag + ": subset enumeration disagrees");
      }
      total += visits;
    }
  }
  out.detail = "16 graphs, " + std::to_string(total) + " trees";
  return out;
}

Outcome untight_structure() {
  Outcome out;
  int flows = 0;
  int nonempty = 0;
  for (std::uint64_t seed = 1; flows < 210; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const int m = 1 + static_cast<int>((seed / 5) % 3);
    const int k = 1 + static_cast<int>((seed / 15) % n);
    const Instance inst = testing::random_uniform_capacity(seed * 31, n, m, k);
    auto opt = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
    if (!opt) continue;
    auto flow = serve_with_open_set(inst, opt->witness.open);
    const std::string tag = "seed " + std::to_string(seed);
    if (!flow || flow->cost + evaluate(inst, opt->witness).opening != opt->optimum) {
      out.fail(tag + ": optimal open set not reproduced");
      continue;
    }
    ++flows;
    const UntightAudit audit = audit_untight(inst, *flow);
    if (audit.num_edges > 0) ++nonempty;
    if (!audit.acyclic) out.fail(tag + ": cycle");
    if (audit.max_not_full_per_component > 1) out.fail(tag + ": two not-full facilities in a component");
    if (audit.num_facilities > m) out.fail(tag + ": " + std::to_string(audit.num_facilities) + " facilities");
    if (audit.num_edges > 2 * m - 1) out.fail(tag + ": " + std::to_string(audit.num_edges) + " edges");
  }
  out.detail = std::to_string(flows) + " optimal flows, " + std::to_string(nonempty) + " with untight edges";
  return out;
}

Outcome proof_chain() {
  Outcome out;
  int instances = 0;
  int uniform = 0;
  for (std::uint64_t seed = 1; instances < 110; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const int m = 1 + static_cast<int>((seed / 6) % 4);
    const int k = 1 + static_cast<int>((seed / 24) % 3);
    const bool uniform_capacity = seed % 2 == 0;
    const Instance inst = testing::random_uniform_opening(seed, n, m, uniform_capacity);
    if (!brute_force_ckfl(inst, k, CardinalityMode::kAtMost)) continue;
    auto result = ckfl_uniform_f_solve(inst, k);
    const std::string tag = "seed " + std::to_string(seed);
    if (!result) {
      out.fail(tag + ": no round feasible on a feasible instance");
      continue;
    }
    ++instances;
    if (uniform_capacity) ++uniform;
    if (!check_feasible(inst, result->solution, 2 * k).empty() ||
        evaluate(inst, result->solution).total != result->cost) {
      out.fail(tag + ": reported solution inconsistent");
    }
    const int cap = uniform_capacity ? 2 * k - 1 : 2 * k;
    if (result->solution.open_count() > cap) out.fail(tag + ": opened " + std::to_string(result->solution.open_count()));
    const RatioReport report = ckfl_ratio_report(inst, k, *result);
    for (const BoundCheck& check : report.checks) {
      if (!check.holds()) out.fail(tag + ": " + check.name + " " + to_string(check.lhs) + " > " + to_string(check.rhs));
    }
    if (report.alpha && result->cost > (1 + 2 * *report.alpha) * report.opt_i0) out.fail(tag + ": final bound");
  }
  out.detail = std::to_string(instances) + " instances, " + std::to_string(uniform) + " uniform-capacity";
  return out;
}

Outcome cfl_bound() {
  Outcome out;
  int instances = 0;
  Rational worst = 0;
  for (std::uint64_t seed = 1; instances < 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const int m = 1 + static_cast<int>((seed / 7) % 4);
    const Instance inst = testing::random_uniform_opening(seed * 101, n, m, seed % 3 == 0);
    if (!brute_force_cfl(inst)) continue;
    auto result = cfl_uniform_f_solve(inst);
    const std::string tag = "seed " + std::to_string(seed);
    if (!result) {
      out.fail(tag + ": no round feasible on a feasible instance");
      continue;
    }
    ++instances;
    const RatioReport report = cfl_ratio_report(inst, *result);
    if (!report.bound_factor) {
      out.fail(tag + ": bound factor undefined");
      continue;
    }
    const Rational factor = std::max(Rational(2 * *report.beta + 1), Rational(*report.delta + 1));
    if (factor != *report.bound_factor) out.fail(tag + ": reported factor differs");
    if (result->cost > factor * report.opt_i0) {
      out.fail(tag + ": cost " + to_string(result->cost) + " > " + to_string(factor * report.opt_i0));
    }
    worst = std::max(worst, Rational(result->cost / report.opt_i0));
  }
  out.detail = std::to_string(instances) + " instances, worst ratio " + to_decimal(worst, 4);
  return out;
}

Outcome subset_sum() {
  Outcome out;
  int instances = 0;
  int yes = 0;
  SplitRng rng = SplitRng(10).split("acceptance-subset-sum");
  while (instances < 150) {
    const int count = static_cast<int>(rng.uniform(1, 12));
    std::vector<std::int64_t> sizes;
    for (int i = 0; i < count; ++i) sizes.push_back(rng.uniform(2, 30));
    const int k = static_cast<int>(rng.uniform(1, std::min(4, count)));
    std::int64_t d = 0;
    if (rng.uniform(0, 1) == 0) {
      std::vector<int> order(count);
      for (int i = 0; i < count; ++i) order[i] = i;
      for (int i = count - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
      for (int i = 0; i < k; ++i) d += sizes[order[i]];
    } else {
      d = rng.uniform(k, 30 * k);
    }
    const Instance inst = gen_subset_sum(sizes, d, k);
    ++instances;
    auto opt = brute_force_ckfl(inst, k, CardinalityMode::kExactly);
    const bool reaches = opt && opt->optimum <= d - k;
    const bool exists = testing::has_k_subset_sum(sizes, d, k);
    if (exists) ++yes;
    if (reaches != exists) out.fail("instance " + std::to_string(instances) + ": d=" + std::to_string(d));
  }
  out.detail = std::to_string(instances) + " instances, " + std::to_string(yes) + " yes";
  return out;
}

Outcome transportation() {
  Outcome out;
  int problems = 0;
  int enumerated = 0;
  SplitRng rng = SplitRng(11).split("acceptance-transportation");
  while (problems < 220) {
    const int a = static_cast<int>(rng.uniform(1, 5));
    const int b = static_cast<int>(rng.uniform(1, 5));
    TransportationProblem tp;
    for (int j = 0; j < b; ++j) tp.demands.push_back(rng.uniform(0, 9));
    std::int64_t total = 0;
    for (std::int64_t dj : tp.demands) total += dj;
    tp.supplies.assign(a, 0);
    for (std::int64_t u = 0; u < total; ++u) ++tp.supplies[rng.uniform(0, a - 1)];
    for (int c = 0; c < a * b; ++c) tp.unit_costs.push_back(make_rational(rng.uniform(0, 40), rng.uniform(1, 4)));
    ++problems;
    const std::string tag = "problem " + std::to_string(problems);

    auto flow = solve_transportation(tp);
    LinearProgram lp;
    std::vector<int> var(static_cast<size_t>(a) * b);
    for (int c = 0; c < a * b; ++c) var[c] = lp.add_variable("x" + std::to_string(c), tp.unit_costs[c]);
    for (int i = 0; i < a; ++i) {
      std::vector<LinearTerm> row;
      for (int j = 0; j < b; ++j) row.push_back({var[static_cast<size_t>(i) * b + j], 1});
      lp.add_constraint(row, Relation::kEqual, tp.supplies[i]);
    }
    for (int j = 0; j < b; ++j) {
      std::vector<LinearTerm> row;
      for (int i = 0; i < a; ++i) row.push_back({var[static_cast<size_t>(i) * b + j], 1});
      lp.add_constraint(row, Relation::kEqual, tp.demands[j]);
    }
    const LpResult relaxed = solve_vertex(lp);
    if (!flow || !relaxed.optimal()) {
      out.fail(tag + ": reported infeasible");
      continue;
    }
    if (flow->cost != relaxed.solution.objective_value) {
      out.fail(tag + ": flow " + to_string(flow->cost) + " vs LP " + to_string(relaxed.solution.objective_value));
    }
    Rational recomputed = 0;
    for (int i = 0; i < a; ++i) {
      if (flow->row_sum(i) != tp.supplies[i]) out.fail(tag + ": supply row");
      for (int j = 0; j < b; ++j) {
        if (flow->at(i, j) < 0) out.fail(tag + ": negative flow");
        recomputed += tp.cost(i, j) * flow->at(i, j);
      }
    }
    for (int j = 0; j < b; ++j) {
      if (flow->column_sum(j) != tp.demands[j]) out.fail(tag + ": demand column");
    }
    if (recomputed != flow->cost) out.fail(tag + ": cost does not match the flow");
    if (!support_is_forest(*flow)) out.fail(tag + ": support has a cycle");
    if (a * b <= 6 && total <= 12) {
      ++enumerated;
      auto reference = testing::enumerate_transportation(tp.supplies, tp.demands, tp.unit_costs);
      if (!reference || *reference != flow->cost) out.fail(tag + ": enumeration disagrees");
    }
  }
  out.detail = std::to_string(problems) + " problems, " + std::to_string(enumerated) + " also enumerated";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "integrality-gap", 1000.0, integrality_gap},
      {2, "fptas-guarantee", 120000.0, fptas_guarantee},
      {3, "two-approx-guarantee", std::nullopt, two_approx_guarantee},
      {4, "vertex-structure", std::nullopt, vertex_structure},
      {5, "exact-uniform", 120000.0, exact_uniform},
      {6, "spanning-trees", std::nullopt, spanning_trees},
      {7, "untight-structure", std::nullopt, untight_structure},
      {8, "proof-chain", std::nullopt, proof_chain},
      {9, "cfl-bound", std::nullopt, cfl_bound},
      {10, "subset-sum", std::nullopt, subset_sum},
      {11, "transportation", std::nullopt, transportation},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_ms && ms >= *c.limit_ms) {
      std::ostringstream limit;
      limit << "over time limit " << *c.limit_ms << " ms";
      outcome.fail(limit.str());
    }
    std::ostringstream line;
    line << (outcome.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << outcome.detail;
    line.precision(1);
    line << std::fixed << " [" << ms << " ms]";
    for (const std::string& f : outcome.failures) line << "; " << f;
    std::cout << line.str() << std::endl;
    if (!outcome.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
