#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

// Open centers together with a client -> center map; the stars are the
// client groups sharing a center.
struct StarSet {
  std::vector<int> centers;     // increasing facility indices
  std::vector<int> assignment;  // client -> facility

  // Σ_j d_j c(assignment[j], j).
  [[nodiscard]] Rational service_cost(const Instance& inst) const;
  // Clients of each center that serves at least one client, by center.
  [[nodiscard]] std::vector<std::pair<int, std::vector<int>>> stars() const;
};

struct LocalSearchConfig {
  int swap_width = 1;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> move_budget;  // default 10 * n * m improving moves
};

// p-swap local search for weighted k-median over the facility sites,
// ignoring capacities and opening costs. Opens exactly k centers; each
// client goes to its nearest center (lowest index on ties).
// Throws std::invalid_argument if k < 1, k > n or swap_width < 1.
StarSet ukm_local_search(const Instance& inst, int k, const LocalSearchConfig& config = {});

struct BifactorResult {
  StarSet stars;
  Rational facility_cost;  // |centers| * f
  Rational service_cost;
  Rational lp_facility_cost;  // F_SOL of the k-median relaxation
  Rational lp_service_cost;   // C_SOL
  Rational scale;             // facility cost multiplier used by the search
};

// UFL add/drop/swap local search with every opening cost f scaled by
// gamma * C_SOL / F_SOL, where (F_SOL, C_SOL) is the optimal k-median LP
// solution for bound k read as a fractional UFL solution with cost f.
// Throws std::invalid_argument unless f > 0, gamma > 0 and 1 <= k <= n.
BifactorResult ufl_bifactor_local_search(const Instance& inst, const Rational& f, const Rational& gamma, int k,
                                         const LocalSearchConfig& config = {});

struct ConsolidatedInstance {
  Instance instance;  // client r sits at stars[r].first
  std::vector<std::pair<int, std::vector<int>>> stars;
};

ConsolidatedInstance consolidate(const Instance& inst, const StarSet& stars);

// One pass of the consolidation pipeline for a fixed bound l.
struct ConsolidationRound {
  int l = 0;
  StarSet stars;
  Rational star_cost;  // COST(x', y')
  std::optional<Rational> bifactor_facility_cost, lp_facility_cost, lp_service_cost;
  bool lp_feasible = false;
  Rational lp_cost;          // COST(x, y) on the consolidated instance
  Rational lp_service_cost_i2;
  int fractional_before = 0;  // fractional y at the LP vertex
  int fractional_after = 0;   // after uniform-capacity transfers
  std::optional<IntegralSolution> solution;
  Rational cost;
  Rational transport_service_cost;
  int opened = 0;
};

struct ConsolidationResult {
  IntegralSolution solution;
  Rational cost;
  int best_l = 0;
  std::vector<ConsolidationRound> rounds;  // l = 1, 2, ...

  [[nodiscard]] const ConsolidationRound& round(int l) const { return rounds.at(l - 1); }
};

inline Rational default_gamma() { return make_rational(78078, 100000); }

struct ConsolidationConfig {
  LocalSearchConfig search;
  Rational gamma = default_gamma();  // CFL only
};

// Best over l = 1..k of: k-median stars with l centers, consolidation,
// CKFL-LP vertex with Σ y = l (uniform capacities also get the transfer
// refinement), open y_i > 0 and ship the original demands. nullopt when no
// round is feasible. Throws std::invalid_argument for non-uniform opening
// costs or a metric that breaks the triangle inequality.
std::optional<ConsolidationResult> ckfl_uniform_f_solve(const Instance& inst, int k,
                                                        const ConsolidationConfig& config = {});

// Same pipeline for l = 1..n with bifactor stars; no cardinality cap.
// Throws std::invalid_argument unless the opening cost is uniform and
// positive and the metric is valid.
std::optional<ConsolidationResult> cfl_uniform_f_solve(const Instance& inst, const ConsolidationConfig& config = {});

struct BoundCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  [[nodiscard]] bool holds() const { return lhs <= rhs; }
};

// Achieved ratios and the proof-chain inequalities, evaluated exactly at the
// round whose l equals the number of facilities the oracle optimum opens.
struct RatioReport {
  int reference_l = 0;
  Rational opt_i0, opt_i1, opt_i2;
  std::optional<Rational> alpha;  // nullopt when the ratio is unbounded
  std::optional<Rational> beta;
  std::optional<Rational> delta;
  std::optional<Rational> bound_factor;
  std::vector<BoundCheck> checks;

  [[nodiscard]] bool all_hold() const;
  [[nodiscard]] std::string to_text() const;
};

// Uses brute_force_ckfl (≤ k) for OPT(I0), brute_force_ukm for OPT(I1) and
// brute_force_ckfl (= l) for OPT(I2). Throws std::invalid_argument if the
// instance is infeasible or exceeds the oracle limit.
RatioReport ckfl_ratio_report(const Instance& inst, int k, const ConsolidationResult& result);

// As above with OPT(I0) from brute_force_cfl; beta and delta are measured
// against the k-median LP of the reference round.
RatioReport cfl_ratio_report(const Instance& inst, const ConsolidationResult& result);

}  // namespace caploc
