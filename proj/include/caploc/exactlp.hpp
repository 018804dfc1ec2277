#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var = 0;
  Rational coef;
};

struct Constraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
  std::string name;
};

struct Variable {
  std::string name;
  Rational cost;
  Rational lower;
  std::optional<Rational> upper;
};

// Minimisation LP over bounded-below variables.
class LinearProgram {
 public:
  int add_variable(std::string name, Rational cost = 0, Rational lower = 0,
                   std::optional<Rational> upper = std::nullopt);
  int add_constraint(std::vector<LinearTerm> terms, Relation relation, Rational rhs,
                     std::string name = {});
  void set_bounds(int var, Rational lower, std::optional<Rational> upper);

  [[nodiscard]] const std::vector<Variable>& variables() const { return variables_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
  [[nodiscard]] int num_variables() const { return static_cast<int>(variables_.size()); }
  [[nodiscard]] int num_constraints() const { return static_cast<int>(constraints_.size()); }
  [[nodiscard]] int count_upper_bounds() const;

  // Debugging aid only; the format is not stable.
  [[nodiscard]] std::string dump() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

struct TightConstraint {
  enum class Kind { kRow, kLower, kUpper };
  Kind kind = Kind::kRow;
  int index = 0;  // constraint index for kRow, variable index otherwise
  friend bool operator==(const TightConstraint&, const TightConstraint&) = default;
};

struct VertexSolution {
  std::vector<Rational> values;
  Rational objective_value;
  // Every constraint (rows and bounds) satisfied with equality.
  std::vector<TightConstraint> basis_certificate;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  VertexSolution solution;  // meaningful only when status == kOptimal
  [[nodiscard]] bool optimal() const { return status == LpStatus::kOptimal; }
};

// Two-phase primal simplex in exact arithmetic with Bland's rule. The
// returned point is a basic feasible solution, hence a vertex.
LpResult solve_vertex(const LinearProgram& lp);

// Rank of the tight-constraint matrix recorded in the certificate, by exact
// Gaussian elimination. Equals num_variables() exactly at a vertex.
int certificate_rank(const LinearProgram& lp, const VertexSolution& sol);

// Residual checks: every row and bound holds, objective matches.
std::vector<std::string> check_lp_solution(const LinearProgram& lp, const VertexSolution& sol);

enum class Cardinality { kEquality, kInequality };

// An LP over the facility-location variables together with the index maps
// back to x_ij and y_i.
struct FacilityLp {
  LinearProgram lp;
  int num_facilities = 0;
  int num_clients = 0;
  std::vector<int> x_index;  // row-major facilities x clients
  std::vector<int> y_index;

  [[nodiscard]] int x(int i, int j) const { return x_index[static_cast<size_t>(i) * num_clients + j]; }
  [[nodiscard]] int y(int i) const { return y_index[i]; }
};

// Single-client relaxation: sum x = d, sum y (= or <=) k, x_i <= s_i y_i as
// rows, 0 <= y_i <= 1 as bounds. Throws std::invalid_argument unless the
// instance has exactly one client.
FacilityLp build_sckfl_lp(const Instance& inst, int k, Cardinality cardinality);

// Multi-client relaxation with demand rows, capacity rows and one
// cardinality row, in that order.
FacilityLp build_ckfl_lp(const Instance& inst, int k, Cardinality cardinality);

// Uncapacitated k-median relaxation with weighted service cost
// sum d_j c_ij x_ij, assignment rows, x_ij <= y_i rows and sum y <= k.
FacilityLp build_ukm_lp(const Instance& inst, int k);

// Positions p in `vars` whose value sol.values[vars[p]] lies strictly in (0, 1).
std::vector<int> fractional_support(const VertexSolution& sol, std::span<const int> vars);

struct FractionalSolution {
  int num_clients = 0;
  std::vector<Rational> x;  // row-major facilities x clients
  std::vector<Rational> y;

  [[nodiscard]] Rational& at(int i, int j) { return x[static_cast<size_t>(i) * num_clients + j]; }
  [[nodiscard]] const Rational& at(int i, int j) const {
    return x[static_cast<size_t>(i) * num_clients + j];
  }
  [[nodiscard]] std::vector<int> fractional_facilities() const;
  [[nodiscard]] Rational cost(const Instance& inst) const;
};

FractionalSolution extract_solution(const FacilityLp& model, const VertexSolution& sol);

// Cost-nonincreasing transfers between fractionally open facilities for
// uniform capacities: a facility saturated by a single client hands flow
// and opening to another such facility of the same client. A fractional
// facility with no flow is closed under Σ y <= k; under Σ y = k it hands its
// opening to one with equal or lower opening cost. Applied until no
// fractional-count-reducing move remains; returns the number of moves made.
// Throws std::invalid_argument for non-uniform capacities.
int reduce_fractional_uniform(const Instance& inst, FractionalSolution& sol,
                              Cardinality cardinality = Cardinality::kEquality);

}  // namespace caploc
