#include "caploc/exactlp.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace caploc {

int LinearProgram::add_variable(std::string name, Rational cost, Rational lower,
                                std::optional<Rational> upper) {
  if (upper && *upper < lower) throw std::invalid_argument("variable " + name + ": upper < lower");
  variables_.push_back({std::move(name), std::move(cost), std::move(lower), std::move(upper)});
  return num_variables() - 1;
}

int LinearProgram::add_constraint(std::vector<LinearTerm> terms, Relation relation, Rational rhs,
                                  std::string name) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("constraint " + name + " references undeclared variable");
    }
  }
  constraints_.push_back({std::move(terms), relation, std::move(rhs), std::move(name)});
  return num_constraints() - 1;
}

void LinearProgram::set_bounds(int var, Rational lower, std::optional<Rational> upper) {
  if (upper && *upper < lower) throw std::invalid_argument("upper < lower");
  variables_.at(var).lower = std::move(lower);
  variables_.at(var).upper = std::move(upper);
}

int LinearProgram::count_upper_bounds() const {
  int count = 0;
  for (const auto& v : variables_) count += v.upper ? 1 : 0;
  return count;
}

std::string LinearProgram::dump() const {
  std::ostringstream out;
  out << "min";
  for (const auto& v : variables_) {
    if (v.cost != 0) out << " + " << to_string(v.cost) << " " << v.name;
  }
  out << '\n';
  for (const auto& c : constraints_) {
    out << (c.name.empty() ? "row" : c.name) << ":";
    for (const auto& t : c.terms) out << " + " << to_string(t.coef) << " " << variables_[t.var].name;
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kEqual: out << " = "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
    }
    out << to_string(c.rhs) << '\n';
  }
  for (const auto& v : variables_) {
    out << to_string(v.lower) << " <= " << v.name;
    if (v.upper) out << " <= " << to_string(*v.upper);
    out << '\n';
  }
  return out.str();
}

namespace {

// Dense tableau for  min c.x  s.t.  A x = b, x >= 0  with b >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<int> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  [[nodiscard]] int num_rows() const { return static_cast<int>(rows_.size()); }
  [[nodiscard]] int num_cols() const { return rows_.empty() ? 0 : static_cast<int>(rows_[0].size()); }
  [[nodiscard]] const std::vector<int>& basis() const { return basis_; }
  [[nodiscard]] const Rational& rhs(int r) const { return rhs_[r]; }
  [[nodiscard]] const Rational& entry(int r, int c) const { return rows_[r][c]; }

  void set_objective(const std::vector<Rational>& cost) {
    reduced_ = cost;
    value_ = 0;
    for (int r = 0; r < num_rows(); ++r) {
      const Rational cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (int c = 0; c < num_cols(); ++c) {
        if (sgn(rows_[r][c]) != 0) reduced_[c] -= cb * rows_[r][c];
      }
      value_ += cb * rhs_[r];
    }
  }

  [[nodiscard]] const Rational& objective_value() const { return value_; }

  enum class Outcome { kOptimal, kUnbounded };

  // Bland's rule: lowest-index improving column, lowest basic index among
  // tied ratios. Terminates without cycling.
  Outcome run(const std::vector<bool>& allowed) {
    for (;;) {
      int entering = -1;
      for (int c = 0; c < num_cols(); ++c) {
        if (allowed[c] && sgn(reduced_[c]) < 0) {
          entering = c;
          break;
        }
      }
      if (entering < 0) return Outcome::kOptimal;
      int leaving = -1;
      Rational best_ratio;
      for (int r = 0; r < num_rows(); ++r) {
        if (sgn(rows_[r][entering]) <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return Outcome::kUnbounded;
      pivot(leaving, entering);
    }
  }

  void pivot(int r, int c) {
    const Rational p = rows_[r][c];
    if (p != 1) {
      for (auto& v : rows_[r]) {
        if (sgn(v) != 0) v /= p;
      }
      rhs_[r] /= p;
    }
    for (int i = 0; i < num_rows(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      const Rational factor = rows_[i][c];
      for (int col = 0; col < num_cols(); ++col) {
        if (sgn(rows_[r][col]) != 0) rows_[i][col] -= factor * rows_[r][col];
      }
      rhs_[i] -= factor * rhs_[r];
    }
    if (!reduced_.empty() && sgn(reduced_[c]) != 0) {
      const Rational factor = reduced_[c];
      for (int col = 0; col < num_cols(); ++col) {
        if (sgn(rows_[r][col]) != 0) reduced_[col] -= factor * rows_[r][col];
      }
      value_ += factor * rhs_[r];
    }
    basis_[r] = c;
  }

  void erase_row(int r) {
    rows_.erase(rows_.begin() + r);
    rhs_.erase(rhs_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  Rational value_;
};

std::vector<TightConstraint> tight_set(const LinearProgram& lp, const std::vector<Rational>& x) {
  std::vector<TightConstraint> tight;
  for (int k = 0; k < lp.num_constraints(); ++k) {
    const Constraint& c = lp.constraints()[k];
    Rational lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * x[t.var];
    if (c.relation == Relation::kEqual || lhs == c.rhs) {
      tight.push_back({TightConstraint::Kind::kRow, k});
    }
  }
  for (int v = 0; v < lp.num_variables(); ++v) {
    const Variable& var = lp.variables()[v];
    if (x[v] == var.lower) tight.push_back({TightConstraint::Kind::kLower, v});
    if (var.upper && x[v] == *var.upper) tight.push_back({TightConstraint::Kind::kUpper, v});
  }
  return tight;
}

}  // namespace

LpResult solve_vertex(const LinearProgram& lp) {
  const int n = lp.num_variables();
  const auto& vars = lp.variables();

  // Rows over shifted variables x' = x - lower, before slack/artificial columns.
  struct StdRow {
    std::map<int, Rational> coef;
    Rational rhs;
    int slack_sign = 0;  // +1 slack, -1 surplus, 0 none
  };
  std::vector<StdRow> std_rows;
  for (const auto& c : lp.constraints()) {
    StdRow row;
    row.rhs = c.rhs;
    for (const auto& t : c.terms) {
      row.coef[t.var] += t.coef;
      row.rhs -= t.coef * vars[t.var].lower;
    }
    row.slack_sign = c.relation == Relation::kLessEqual ? 1 : c.relation == Relation::kGreaterEqual ? -1 : 0;
    std_rows.push_back(std::move(row));
  }
  for (int v = 0; v < n; ++v) {
    if (!vars[v].upper) continue;
    StdRow row;
    row.coef[v] = 1;
    row.rhs = *vars[v].upper - vars[v].lower;
    row.slack_sign = 1;
    std_rows.push_back(std::move(row));
  }

  const int rows = static_cast<int>(std_rows.size());
  int slack_count = 0;
  for (const auto& r : std_rows) slack_count += r.slack_sign != 0 ? 1 : 0;

  // Orientation so that every rhs is nonnegative; decide which rows need an
  // artificial column.
  std::vector<int> slack_col(rows, -1);
  int next_col = n;
  for (int r = 0; r < rows; ++r) {
    if (std_rows[r].slack_sign != 0) slack_col[r] = next_col++;
  }
  std::vector<bool> negate(rows, false);
  std::vector<int> artificial_col(rows, -1);
  for (int r = 0; r < rows; ++r) {
    negate[r] = sgn(std_rows[r].rhs) < 0;
    const int effective_slack = negate[r] ? -std_rows[r].slack_sign : std_rows[r].slack_sign;
    if (effective_slack != 1) artificial_col[r] = next_col++;
  }
  const int cols = next_col;
  const int first_artificial = n + slack_count;

  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  std::vector<Rational> b(rows);
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    const Rational sign = negate[r] ? -1 : 1;
    for (const auto& [v, coef] : std_rows[r].coef) a[r][v] = sign * coef;
    if (slack_col[r] >= 0) a[r][slack_col[r]] = sign * std_rows[r].slack_sign;
    b[r] = sign * std_rows[r].rhs;
    if (artificial_col[r] >= 0) {
      a[r][artificial_col[r]] = 1;
      basis[r] = artificial_col[r];
    } else {
      basis[r] = slack_col[r];
    }
  }
  Tableau tableau(std::move(a), std::move(b), std::move(basis));

  std::vector<bool> allowed(cols, true);
  if (first_artificial < cols) {
    std::vector<Rational> phase1(cols);
    for (int c = first_artificial; c < cols; ++c) phase1[c] = 1;
    tableau.set_objective(phase1);
    tableau.run(allowed);
    if (sgn(tableau.objective_value()) > 0) return {LpStatus::kInfeasible, {}};
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (int r = tableau.num_rows() - 1; r >= 0; --r) {
      if (tableau.basis()[r] < first_artificial) continue;
      int col = -1;
      for (int c = 0; c < first_artificial; ++c) {
        if (sgn(tableau.entry(r, c)) != 0) {
          col = c;
          break;
        }
      }
      if (col >= 0) {
        tableau.pivot(r, col);
      } else {
        tableau.erase_row(r);
      }
    }
    for (int c = first_artificial; c < cols; ++c) allowed[c] = false;
  }

  std::vector<Rational> cost(cols);
  for (int v = 0; v < n; ++v) cost[v] = vars[v].cost;
  tableau.set_objective(cost);
  if (tableau.run(allowed) == Tableau::Outcome::kUnbounded) return {LpStatus::kUnbounded, {}};

  LpResult result;
  result.status = LpStatus::kOptimal;
  auto& sol = result.solution;
  sol.values.resize(n);
  for (int v = 0; v < n; ++v) sol.values[v] = vars[v].lower;
  for (int r = 0; r < tableau.num_rows(); ++r) {
    const int c = tableau.basis()[r];
    if (c < n) sol.values[c] += tableau.rhs(r);
  }
  sol.objective_value = 0;
  for (int v = 0; v < n; ++v) sol.objective_value += vars[v].cost * sol.values[v];
  sol.basis_certificate = tight_set(lp, sol.values);
  return result;
}

int certificate_rank(const LinearProgram& lp, const VertexSolution& sol) {
  const int n = lp.num_variables();
  std::vector<std::vector<Rational>> m;
  for (const auto& t : sol.basis_certificate) {
    std::vector<Rational> row(n);
    if (t.kind == TightConstraint::Kind::kRow) {
      for (const auto& term : lp.constraints()[t.index].terms) row[term.var] += term.coef;
    } else {
      row[t.index] = 1;
    }
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (sgn(m[r][col]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || sgn(m[r][col]) == 0) continue;
      const Rational factor = m[r][col] / m[rank][col];
      for (int c = col; c < n; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::string> check_lp_solution(const LinearProgram& lp, const VertexSolution& sol) {
  std::vector<std::string> issues;
  if (static_cast<int>(sol.values.size()) != lp.num_variables()) {
    issues.push_back("value vector has wrong size");
    return issues;
  }
  for (int v = 0; v < lp.num_variables(); ++v) {
    const Variable& var = lp.variables()[v];
    if (sol.values[v] < var.lower) issues.push_back(var.name + " below lower bound");
    if (var.upper && sol.values[v] > *var.upper) issues.push_back(var.name + " above upper bound");
  }
  for (const auto& c : lp.constraints()) {
    Rational lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * sol.values[t.var];
    const bool ok = c.relation == Relation::kEqual        ? lhs == c.rhs
                    : c.relation == Relation::kLessEqual ? lhs <= c.rhs
                                                         : lhs >= c.rhs;
    if (!ok) issues.push_back("constraint " + c.name + " violated");
  }
  Rational obj = 0;
  for (int v = 0; v < lp.num_variables(); ++v) obj += lp.variables()[v].cost * sol.values[v];
  if (obj != sol.objective_value) issues.push_back("objective value mismatch");
  return issues;
}

namespace {

FacilityLp facility_variables(const Instance& inst) {
  FacilityLp model;
  model.num_facilities = inst.num_facilities();
  model.num_clients = inst.num_clients();
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) {
      model.x_index.push_back(model.lp.add_variable(
          "x_" + std::to_string(i) + "_" + std::to_string(j), inst.unit_cost(i, j)));
    }
  }
  for (int i = 0; i < inst.num_facilities(); ++i) {
    model.y_index.push_back(model.lp.add_variable("y_" + std::to_string(i),
                                                  inst.facility(i).opening_cost, 0, Rational(1)));
  }
  return model;
}

void add_cardinality_row(FacilityLp& model, int k, Cardinality cardinality) {
  std::vector<LinearTerm> terms;
  for (int i = 0; i < model.num_facilities; ++i) terms.push_back({model.y(i), 1});
  model.lp.add_constraint(std::move(terms),
                          cardinality == Cardinality::kEquality ? Relation::kEqual : Relation::kLessEqual,
                          k, "cardinality");
}

void add_capacity_rows(const Instance& inst, FacilityLp& model) {
  for (int i = 0; i < inst.num_facilities(); ++i) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < inst.num_clients(); ++j) terms.push_back({model.x(i, j), 1});
    terms.push_back({model.y(i), -Rational(inst.facility(i).capacity)});
    model.lp.add_constraint(std::move(terms), Relation::kLessEqual, 0, "capacity_" + std::to_string(i));
  }
}

void add_demand_rows(const Instance& inst, FacilityLp& model) {
  for (int j = 0; j < inst.num_clients(); ++j) {
    std::vector<LinearTerm> terms;
    for (int i = 0; i < inst.num_facilities(); ++i) terms.push_back({model.x(i, j), 1});
    model.lp.add_constraint(std::move(terms), Relation::kEqual, inst.client(j).demand,
                            "demand_" + std::to_string(j));
  }
}

}  // namespace

FacilityLp build_sckfl_lp(const Instance& inst, int k, Cardinality cardinality) {
  if (inst.num_clients() != 1) throw std::invalid_argument("single-sink LP needs exactly one client");
  FacilityLp model = facility_variables(inst);
  add_demand_rows(inst, model);
  add_cardinality_row(model, k, cardinality);
  add_capacity_rows(inst, model);
  return model;
}

FacilityLp build_ckfl_lp(const Instance& inst, int k, Cardinality cardinality) {
  FacilityLp model = facility_variables(inst);
  add_demand_rows(inst, model);
  add_capacity_rows(inst, model);
  add_cardinality_row(model, k, cardinality);
  return model;
}

FacilityLp build_ukm_lp(const Instance& inst, int k) {
  FacilityLp model;
  model.num_facilities = inst.num_facilities();
  model.num_clients = inst.num_clients();
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) {
      model.x_index.push_back(model.lp.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j),
                                                    inst.unit_cost(i, j) * inst.client(j).demand, 0,
                                                    Rational(1)));
    }
  }
  for (int i = 0; i < inst.num_facilities(); ++i) {
    model.y_index.push_back(model.lp.add_variable("y_" + std::to_string(i), 0, 0, Rational(1)));
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    std::vector<LinearTerm> terms;
    for (int i = 0; i < inst.num_facilities(); ++i) terms.push_back({model.x(i, j), 1});
    model.lp.add_constraint(std::move(terms), Relation::kEqual, 1, "assign_" + std::to_string(j));
  }
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) {
      model.lp.add_constraint({{model.x(i, j), 1}, {model.y(i), -1}}, Relation::kLessEqual, 0,
                              "open_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  add_cardinality_row(model, k, Cardinality::kInequality);
  return model;
}

std::vector<int> fractional_support(const VertexSolution& sol, std::span<const int> vars) {
  std::vector<int> out;
  for (size_t p = 0; p < vars.size(); ++p) {
    if (strictly_between_zero_and_one(sol.values.at(vars[p]))) out.push_back(static_cast<int>(p));
  }
  return out;
}

std::vector<int> FractionalSolution::fractional_facilities() const {
  std::vector<int> out;
  for (size_t i = 0; i < y.size(); ++i) {
    if (strictly_between_zero_and_one(y[i])) out.push_back(static_cast<int>(i));
  }
  return out;
}

Rational FractionalSolution::cost(const Instance& inst) const {
  Rational total = 0;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) total += inst.unit_cost(i, j) * at(i, j);
    total += inst.facility(i).opening_cost * y[i];
  }
  return total;
}

FractionalSolution extract_solution(const FacilityLp& model, const VertexSolution& sol) {
  FractionalSolution out;
  out.num_clients = model.num_clients;
  out.x.reserve(model.x_index.size());
  for (int v : model.x_index) out.x.push_back(sol.values.at(v));
  for (int v : model.y_index) out.y.push_back(sol.values.at(v));
  return out;
}

namespace {

// Client served by facility i when all of i's flow goes to one client and
// saturates s*y_i; -1 otherwise.
int dedicated_client(const FractionalSolution& sol, int i, int clients, std::int64_t s) {
  int client = -1;
  for (int j = 0; j < clients; ++j) {
    if (sgn(sol.at(i, j)) == 0) continue;
    if (client >= 0) return -1;
    client = j;
  }
  if (client < 0 || sol.at(i, client) != s * sol.y[i]) return -1;
  return client;
}

bool has_flow(const FractionalSolution& sol, int i, int clients) {
  for (int j = 0; j < clients; ++j) {
    if (sgn(sol.at(i, j)) != 0) return true;
  }
  return false;
}

}  // namespace

int reduce_fractional_uniform(const Instance& inst, FractionalSolution& sol, Cardinality cardinality) {
  if (!inst.uniform_capacity()) throw std::invalid_argument("transfer moves need uniform capacities");
  const std::int64_t s = inst.facility(0).capacity;
  const int m = inst.num_clients();
  int moves = 0;
  for (;;) {
    const std::vector<int> frac = sol.fractional_facilities();
    bool moved = false;
    // Idle fractional facility: close it when the bound is an inequality,
    // otherwise hand its opening to another fractional one.
    for (int a : frac) {
      if (has_flow(sol, a, m)) continue;
      if (cardinality == Cardinality::kInequality) {
        sol.y[a] = 0;
        moved = true;
        break;
      }
      for (int b : frac) {
        if (b == a || inst.facility(b).opening_cost > inst.facility(a).opening_cost) continue;
        const Rational eps = std::min(sol.y[a], Rational(1 - sol.y[b]));
        sol.y[a] -= eps;
        sol.y[b] += eps;
        moved = true;
        break;
      }
      if (moved) break;
    }
    // Two saturated fractional facilities sharing their only client: shift
    // towards the lower marginal cost c_ij + f_i / s.
    for (size_t p = 0; !moved && p < frac.size(); ++p) {
      const int j = dedicated_client(sol, frac[p], m, s);
      if (j < 0) continue;
      for (size_t q = p + 1; q < frac.size(); ++q) {
        if (dedicated_client(sol, frac[q], m, s) != j) continue;
        int keep = frac[p];
        int drop = frac[q];
        const Rational marginal_keep = inst.unit_cost(keep, j) + inst.facility(keep).opening_cost / s;
        const Rational marginal_drop = inst.unit_cost(drop, j) + inst.facility(drop).opening_cost / s;
        if (marginal_drop < marginal_keep) std::swap(keep, drop);
        const Rational eps = std::min(Rational(s * sol.y[drop]), Rational(s * (1 - sol.y[keep])));
        sol.at(keep, j) += eps;
        sol.y[keep] += eps / s;
        sol.at(drop, j) -= eps;
        sol.y[drop] -= eps / s;
        moved = true;
        break;
      }
    }
    if (!moved) return moves;
    ++moves;
  }
}

}  // namespace caploc
