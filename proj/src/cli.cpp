#include "caploc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include "caploc/consolidation.hpp"
#include "caploc/exactlp.hpp"
#include "caploc/flow.hpp"
#include "caploc/instance_io.hpp"
#include "caploc/oracle.hpp"
#include "caploc/rng.hpp"
#include "caploc/single_sink.hpp"
#include "caploc/uniform_exact.hpp"

namespace caploc::cli {

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "digest=" << digest << "\n";
  out << "algorithm=" << algorithm << "\n";
  for (const auto& [key, value] : parameters) out << "param." << key << "=" << value << "\n";
  out << "status=" << status << "\n";
  if (cost) {
    out << "cost.service=" << to_string(cost->service) << "\n";
    out << "cost.opening=" << to_string(cost->opening) << "\n";
    out << "cost.total=" << to_string(cost->total) << "\n";
    out << "cost.total_decimal=" << to_decimal(cost->total) << "\n";
    out << "open_count=" << open_count << "\n";
    out << "open=";
    for (size_t p = 0; p < open.size(); ++p) out << (p ? "," : "") << open[p];
    out << "\n";
  }
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", wall_ms);
  out << "wall_ms=" << wall << "\n";
  for (const auto& [key, value] : ratio) out << "ratio." << key << "=" << value << "\n";
  return out.str();
}

const std::vector<std::string>& algorithm_ids() {
  static const std::vector<std::string> ids{"brute-force", "cfl", "consolidate", "exact-uniform",
                                            "fptas",       "lp",  "two-approx"};
  return ids;
}

namespace {

int resolve_k(const SolveOptions& options, const Instance& inst) {
  if (options.k) return *options.k;
  if (inst.k()) return *inst.k();
  throw std::invalid_argument("algorithm '" + options.algorithm + "' needs k: pass --k or set k in the file");
}

std::string ratio_text(const Rational& cost, const Rational& optimum) {
  if (optimum == 0) return cost == 0 ? "1" : "unbounded";
  return to_string(Rational(cost / optimum));
}

// What the algorithm produced, before reporting.
struct Outcome {
  std::optional<IntegralSolution> solution;
  std::optional<Rational> lp_value;
  std::optional<FractionalSolution> lp_point;
  KeyValues parameters;
};

Outcome run_algorithm(const Instance& inst, const SolveOptions& o) {
  Outcome out;
  const std::string& alg = o.algorithm;
  if (alg == "fptas") {
    const int k = resolve_k(o, inst);
    const Rational eps = parse_rational(o.epsilon);
    out.parameters = {{"k", std::to_string(k)}, {"eps", to_string(eps)}};
    if (auto r = fptas_solve(inst, k, eps)) out.solution = r->solution;
  } else if (alg == "two-approx") {
    const int k = resolve_k(o, inst);
    out.parameters = {{"k", std::to_string(k)}};
    if (auto r = two_approx_solve(inst, k)) {
      out.solution = r->solution;
      out.parameters.emplace_back("recursion_depth", std::to_string(r->recursion_depth));
    }
  } else if (alg == "exact-uniform") {
    const int k = resolve_k(o, inst);
    out.parameters = {{"k", std::to_string(k)}, {"max_m", std::to_string(o.max_m)}};
    if (auto r = exact_uniform_solve(inst, k, ExactUniformConfig{o.max_m})) out.solution = r->solution;
  } else if (alg == "consolidate") {
    const int k = resolve_k(o, inst);
    ConsolidationConfig config;
    config.search = {o.swap_width, o.seed, std::nullopt};
    out.parameters = {{"k", std::to_string(k)}, {"swap_width", std::to_string(o.swap_width)},
                      {"seed", std::to_string(o.seed)}};
    if (auto r = ckfl_uniform_f_solve(inst, k, config)) {
      out.solution = r->solution;
      out.parameters.emplace_back("best_l", std::to_string(r->best_l));
    }
  } else if (alg == "cfl") {
    ConsolidationConfig config;
    config.search = {o.swap_width, o.seed, std::nullopt};
    config.gamma = parse_rational(o.gamma);
    out.parameters = {{"gamma", to_string(config.gamma)}, {"swap_width", std::to_string(o.swap_width)},
                      {"seed", std::to_string(o.seed)}};
    if (auto r = cfl_uniform_f_solve(inst, config)) {
      out.solution = r->solution;
      out.parameters.emplace_back("best_l", std::to_string(r->best_l));
    }
  } else if (alg == "brute-force") {
    std::optional<OracleResult> r;
    if (o.k || inst.k()) {
      const int k = resolve_k(o, inst);
      out.parameters = {{"k", std::to_string(k)}, {"mode", o.exact_k ? "exactly" : "at-most"}};
      r = brute_force_ckfl(inst, k, o.exact_k ? CardinalityMode::kExactly : CardinalityMode::kAtMost);
    } else {
      out.parameters = {{"mode", "no-cardinality"}};
      r = brute_force_cfl(inst);
    }
    if (r) out.solution = r->witness;
  } else if (alg == "lp") {
    const int k = o.k || inst.k() ? resolve_k(o, inst) : inst.num_facilities();
    out.parameters = {{"k", std::to_string(k)}};
    const FacilityLp model = build_ckfl_lp(inst, k, Cardinality::kInequality);
    const LpResult lp = solve_vertex(model.lp);
    if (lp.optimal()) {
      out.lp_value = lp.solution.objective_value;
      out.lp_point = extract_solution(model, lp.solution);
    }
  } else {
    throw std::invalid_argument("unknown algorithm '" + alg + "'");
  }
  return out;
}

// Oracle comparison; returns false when the achieved ratio exceeds the bound.
bool attach_oracle(const Instance& inst, const SolveOptions& o, const Outcome& outcome, RunReport& report) {
  const std::string& alg = o.algorithm;
  if (alg == "brute-force") return true;
  if (alg == "lp") {
    if (!outcome.lp_value) return true;
    const int k = o.k || inst.k() ? resolve_k(o, inst) : inst.num_facilities();
    auto mip = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
    if (!mip) return true;
    report.ratio = {{"z_mip", to_string(mip->optimum)},
                    {"z_lp", to_string(*outcome.lp_value)},
                    {"gap", ratio_text(mip->optimum, *outcome.lp_value)}};
    return *outcome.lp_value <= mip->optimum;
  }
  if (!report.cost) return true;
  const Rational& cost = report.cost->total;
  auto record = [&](const Rational& optimum, const std::optional<Rational>& bound) {
    report.ratio.emplace_back("oracle", to_string(optimum));
    report.ratio.emplace_back("ratio", ratio_text(cost, optimum));
    if (!bound) return true;
    const bool within = cost <= *bound * optimum;
    report.ratio.emplace_back("bound", to_string(*bound));
    report.ratio.emplace_back("within_bound", within ? "yes" : "no");
    return within;
  };
  const int k = alg == "cfl" ? 0 : resolve_k(o, inst);
  if (alg == "fptas" || alg == "exact-uniform") {
    auto opt = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
    const Rational bound = alg == "fptas" ? Rational(1 + parse_rational(o.epsilon)) : Rational(1);
    return !opt || record(opt->optimum, bound);
  }
  if (alg == "two-approx") {
    auto opt = brute_force_ckfl(inst, k, CardinalityMode::kExactly);
    return !opt || record(opt->optimum, Rational(2));
  }
  ConsolidationConfig config;
  config.search = {o.swap_width, o.seed, std::nullopt};
  RatioReport chain;
  if (alg == "consolidate") {
    chain = ckfl_ratio_report(inst, k, *ckfl_uniform_f_solve(inst, k, config));
  } else {
    config.gamma = parse_rational(o.gamma);
    chain = cfl_ratio_report(inst, *cfl_uniform_f_solve(inst, config));
  }
  const bool within = record(chain.opt_i0, chain.bound_factor);
  std::istringstream lines(chain.to_text());
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    report.ratio.emplace_back("chain." + line.substr(0, eq), line.substr(eq + 1));
  }
  return within && chain.all_hold();
}

}  // namespace

std::pair<int, RunReport> solve(const Instance& inst, const SolveOptions& options) {
  RunReport report;
  report.digest = digest(inst);
  report.algorithm = options.algorithm;
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome = run_algorithm(inst, options);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.parameters = outcome.parameters;
  if (outcome.lp_value) {
    report.status = "ok";
    CostBreakdown cost{0, 0, *outcome.lp_value};
    for (int i = 0; i < inst.num_facilities(); ++i) {
      cost.opening += inst.facility(i).opening_cost * outcome.lp_point->y[i];
      if (outcome.lp_point->y[i] > 0) report.open.push_back(i);
    }
    cost.service = cost.total - cost.opening;
    report.cost = cost;
    report.open_count = static_cast<int>(report.open.size());
  } else if (outcome.solution) {
    report.status = "ok";
    report.cost = evaluate(inst, *outcome.solution);
    report.open_count = outcome.solution->open_count();
    for (int i = 0; i < inst.num_facilities(); ++i) {
      if (outcome.solution->open[i]) report.open.push_back(i);
    }
  } else {
    report.status = "infeasible";
  }
  int code = report.status == "ok" ? kOk : kInfeasible;
  if (options.oracle && !attach_oracle(inst, options, outcome, report)) code = kViolation;
  return {code, report};
}

std::string bench_table(const std::string& directory, std::vector<std::string> algorithms, const SolveOptions& base) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::sort(algorithms.begin(), algorithms.end());
  std::ostringstream out;
  out << "instance\talg\tcost\tcost_approx\tratio\tratio_approx\topen_count\ttime_ms\n";
  for (const auto& file : files) {
    for (const auto& alg : algorithms) {
      out << file.filename().string() << "\t" << alg << "\t";
      try {
        const Instance inst = read_instance_file(file.string());
        SolveOptions options = base;
        options.algorithm = alg;
        options.oracle = inst.num_facilities() <= kDefaultOracleLimit;
        auto [code, report] = solve(inst, options);
        if (!report.cost) {
          out << "infeasible\t-\t-\t-\t-\t";
        } else {
          out << to_string(report.cost->total) << "\t" << to_decimal(report.cost->total) << "\t";
          std::string ratio = "-";
          for (const auto& [key, value] : report.ratio) {
            if (key == (alg == "lp" ? "gap" : "ratio")) ratio = value;
          }
          const bool numeric = ratio != "-" && ratio != "unbounded";
          out << ratio << "\t" << (numeric ? to_decimal(parse_rational(ratio)) : ratio) << "\t"
              << (alg == "lp" ? std::string("-") : std::to_string(report.open_count)) << "\t";
        }
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", report.wall_ms);
        out << wall << "\n";
      } catch (const std::exception& e) {
        std::string what = e.what();
        std::replace(what.begin(), what.end(), '\t', ' ');
        out << "error: " << what << "\t-\t-\t-\t-\t-\n";
      }
    }
  }
  return out.str();
}

namespace {

Instance restrict(const Instance& inst, const std::vector<int>& facilities, const std::vector<int>& clients) {
  std::vector<int> sites(facilities);
  for (int j : clients) sites.push_back(inst.client_site(j));
  const size_t count = sites.size();
  std::vector<Rational> metric(count * count);
  for (size_t a = 0; a < count; ++a) {
    for (size_t b = 0; b < count; ++b) metric[a * count + b] = inst.distance(sites[a], sites[b]);
  }
  std::vector<Facility> fs;
  for (int i : facilities) fs.push_back(inst.facility(i));
  std::vector<Client> cs;
  for (int j : clients) cs.push_back(inst.client(j));
  std::optional<int> k = inst.k();
  if (k) k = std::min(*k, static_cast<int>(facilities.size()));
  return Instance(std::move(fs), std::move(cs), std::move(metric), k);
}

bool still_violates(const Violation& violation, const Instance& inst) {
  try {
    return violation(inst).has_value();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Instance minimize_counterexample(const Instance& inst, const Violation& violation) {
  Instance current = inst;
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (int side = 0; side < 2 && !shrunk; ++side) {
      const int size = side == 0 ? current.num_facilities() : current.num_clients();
      for (int drop = 0; drop < size && size > 1 && !shrunk; ++drop) {
        std::vector<int> fs, cs;
        for (int i = 0; i < current.num_facilities(); ++i) {
          if (side != 0 || i != drop) fs.push_back(i);
        }
        for (int j = 0; j < current.num_clients(); ++j) {
          if (side != 1 || j != drop) cs.push_back(j);
        }
        Instance smaller = restrict(current, fs, cs);
        if (still_violates(violation, smaller)) {
          current = std::move(smaller);
          shrunk = true;
        }
      }
    }
  }
  return current;
}

namespace {

std::optional<std::string> vertex_structure_violation(const Instance& inst) {
  const int k = inst.k().value_or(inst.num_facilities());
  const int m = inst.num_clients();
  if (m == 1) {
    const FacilityLp model = build_sckfl_lp(inst, k, Cardinality::kEquality);
    const LpResult lp = solve_vertex(model.lp);
    if (lp.optimal()) {
      const std::vector<int> frac = fractional_support(lp.solution, model.y_index);
      if (frac.size() != 0 && frac.size() != 2) {
        return "single-client vertex has " + std::to_string(frac.size()) + " fractional facilities";
      }
      if (frac.size() == 2) {
        for (int i = 0; i < inst.num_facilities(); ++i) {
          const Rational& x = lp.solution.values[model.x(i, 0)];
          const Rational& y = lp.solution.values[model.y(i)];
          if (x != 0 && x != inst.facility(i).capacity * y) {
            return "facility " + std::to_string(i) + " partially used at a fractional vertex";
          }
        }
      }
    }
  }
  const FacilityLp model = build_ckfl_lp(inst, k, Cardinality::kInequality);
  const LpResult lp = solve_vertex(model.lp);
  if (!lp.optimal()) return std::nullopt;
  FractionalSolution frac = extract_solution(model, lp.solution);
  const int before = static_cast<int>(frac.fractional_facilities().size());
  if (before > m + 1) return "CKFL-LP vertex has " + std::to_string(before) + " fractional facilities";
  if (!inst.uniform_capacity()) return std::nullopt;
  const Rational cost = frac.cost(inst);
  reduce_fractional_uniform(inst, frac, Cardinality::kInequality);
  const int after = static_cast<int>(frac.fractional_facilities().size());
  if (after > m) return "uniform refinement left " + std::to_string(after) + " fractional facilities";
  if (frac.cost(inst) != cost) return "uniform refinement changed the LP cost";
  Rational opened = 0;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    Rational load = 0;
    if (frac.y[i] < 0 || frac.y[i] > 1) return "refined y outside [0, 1]";
    opened += frac.y[i];
    for (int j = 0; j < m; ++j) {
      if (frac.at(i, j) < 0) return "refined flow negative";
      load += frac.at(i, j);
    }
    if (load > inst.facility(i).capacity * frac.y[i]) return "refined flow exceeds capacity";
  }
  for (int j = 0; j < m; ++j) {
    Rational served = 0;
    for (int i = 0; i < inst.num_facilities(); ++i) served += frac.at(i, j);
    if (served != inst.client(j).demand) return "refined flow misses a demand";
  }
  if (opened > k) return "refined y exceeds the cardinality bound";
  return std::nullopt;
}

std::optional<std::string> untight_violation(const Instance& inst) {
  const int k = inst.k().value_or(inst.num_facilities());
  auto opt = brute_force_ckfl(inst, k, CardinalityMode::kAtMost);
  if (!opt) return std::nullopt;
  auto flow = serve_with_open_set(inst, opt->witness.open);
  if (!flow) return "oracle witness cannot be served";
  const UntightAudit audit = audit_untight(inst, *flow);
  const int m = inst.num_clients();
  if (!audit.acyclic) return "untight subgraph has a cycle";
  if (audit.max_not_full_per_component > 1) return "component with two not-full facilities";
  if (audit.num_facilities > m) return "untight subgraph has more than m facilities";
  if (audit.num_edges > 2 * m - 1) return "untight subgraph has more than 2m-1 edges";
  return std::nullopt;
}

std::optional<std::string> proof_chain_violation(const Instance& inst) {
  const int k = inst.k().value_or(1);
  auto result = ckfl_uniform_f_solve(inst, k);
  if (!result) return std::nullopt;
  const RatioReport report = ckfl_ratio_report(inst, k, *result);
  for (const auto& check : report.checks) {
    if (!check.holds()) return "proof-chain check " + check.name + " fails";
  }
  return std::nullopt;
}

// Random instance for trial t of a suite.
Instance suite_instance(const std::string& suite, SplitRng& rng) {
  RandomSpec spec;
  spec.seed = rng.next();
  spec.box = 15;
  if (suite == "vertex-structure") {
    spec.facilities = static_cast<int>(rng.uniform(2, 7));
    spec.clients = rng.uniform(0, 1) == 0 ? 1 : static_cast<int>(rng.uniform(2, 4));
    const bool uniform = rng.uniform(0, 1) == 1;
    const std::int64_t s = rng.uniform(3, 10);
    spec.capacity = uniform ? IntRange{s, s} : IntRange{1, 12};
    spec.demand = {1, 8};
    spec.k = static_cast<int>(rng.uniform(1, spec.facilities));
  } else if (suite == "untight-graph") {
    spec.facilities = static_cast<int>(rng.uniform(3, 7));
    spec.clients = static_cast<int>(rng.uniform(1, 3));
    const std::int64_t s = rng.uniform(2, 7);
    spec.capacity = {s, s};
    spec.demand = {1, 2 * s};
    spec.k = static_cast<int>(rng.uniform(1, spec.facilities));
  } else {
    spec.facilities = static_cast<int>(rng.uniform(3, 7));
    spec.clients = static_cast<int>(rng.uniform(1, 4));
    const std::int64_t f = rng.uniform(1, 12);
    spec.opening_cost = {f, f};
    if (rng.uniform(0, 1) == 1) {
      const std::int64_t s = rng.uniform(3, 9);
      spec.capacity = {s, s};
    } else {
      spec.capacity = {2, 10};
    }
    spec.demand = {1, 6};
    spec.k = static_cast<int>(rng.uniform(1, 3));
  }
  return gen_random(spec);
}

}  // namespace

VerifySummary verify(const std::string& suite, std::uint64_t seed, int trials) {
  VerifySummary summary;
  summary.suite = suite;
  summary.trials = trials;
  if (suite == "enumeration") {
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        std::set<BipartiteEdges> seen;
        std::int64_t visits = 0;
        enumerate_spanning_trees(a, b, [&](const BipartiteEdges& tree) {
          seen.insert(tree);
          ++visits;
        });
        ++summary.checked;
        if (static_cast<std::int64_t>(seen.size()) != visits || BigInt(visits) != count_spanning_trees(a, b)) {
          ++summary.violations;
          if (!summary.first_violation) {
            summary.first_violation = "K_{" + std::to_string(a) + "," + std::to_string(b) + "} gives " +
                                      std::to_string(visits) + " trees";
          }
        }
      }
    }
    return summary;
  }
  Violation violation;
  if (suite == "vertex-structure") {
    violation = vertex_structure_violation;
  } else if (suite == "untight-graph") {
    violation = untight_violation;
  } else if (suite == "proof-chain") {
    violation = proof_chain_violation;
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  SplitRng rng = SplitRng(seed).split(suite);
  for (int t = 0; t < trials; ++t) {
    const Instance inst = suite_instance(suite, rng);
    ++summary.checked;
    std::optional<std::string> found;
    try {
      found = violation(inst);
    } catch (const std::logic_error& e) {
      found = std::string("internal invariant: ") + e.what();
    }
    if (!found) continue;
    ++summary.violations;
    if (!summary.first_violation) {
      summary.first_violation = "trial " + std::to_string(t) + ": " + *found;
      summary.counterexample = minimize_counterexample(inst, violation);
    }
  }
  return summary;
}

namespace {

std::vector<std::int64_t> parse_sizes(const std::string& text) {
  std::vector<std::int64_t> sizes;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    size_t used = 0;
    const long long value = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad size '" + item + "'");
    sizes.push_back(value);
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes needs at least one value");
  return sizes;
}

void emit(const Instance& inst, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << serialize(inst);
  } else {
    write_instance_file(path, inst);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacitated k-facility location solvers and verifiers", "caploc"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "Write a caploc v1 instance");
  generate->require_subcommand(1);
  std::string out_path;
  RandomSpec spec;
  std::optional<int> gen_k;
  auto* random = generate->add_subcommand("random", "Random L1 grid instance");
  random->add_option("--seed", spec.seed);
  random->add_option("--n", spec.facilities)->check(CLI::PositiveNumber);
  random->add_option("--m", spec.clients)->check(CLI::PositiveNumber);
  random->add_option("--box", spec.box)->check(CLI::NonNegativeNumber);
  random->add_option("--cap-lo", spec.capacity.lo);
  random->add_option("--cap-hi", spec.capacity.hi);
  random->add_option("--demand-lo", spec.demand.lo);
  random->add_option("--demand-hi", spec.demand.hi);
  random->add_option("--open-lo", spec.opening_cost.lo);
  random->add_option("--open-hi", spec.opening_cost.hi);
  random->add_option("--k", gen_k)->check(CLI::PositiveNumber);
  random->add_option("--out", out_path);
  std::int64_t fig_s = 10000, fig_m = 1000000;
  auto* figure1 = generate->add_subcommand("figure1", "Four-facility integrality-gap instance");
  figure1->add_option("--s", fig_s);
  figure1->add_option("--M", fig_m);
  figure1->add_option("--out", out_path);
  std::string sizes_text;
  std::int64_t ss_d = 0;
  int ss_k = 1;
  auto* subset = generate->add_subcommand("subset-sum", "Single-client instance from a SUBSET-SUM input");
  subset->add_option("--sizes", sizes_text)->required();
  subset->add_option("--d", ss_d)->required();
  subset->add_option("--k", ss_k)->required()->check(CLI::PositiveNumber);
  subset->add_option("--out", out_path);

  auto* solve_cmd = app.add_subcommand("solve", "Run one algorithm on an instance file");
  std::string in_path;
  SolveOptions options;
  std::optional<int> solve_k;
  solve_cmd->add_option("file", in_path)->required();
  solve_cmd->add_option("--alg", options.algorithm)->required()->check(CLI::IsMember(algorithm_ids()));
  solve_cmd->add_option("--k", solve_k)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--eps", options.epsilon);
  solve_cmd->add_option("--max-m", options.max_m)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--swap-width", options.swap_width)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", options.seed);
  solve_cmd->add_option("--gamma", options.gamma);
  solve_cmd->add_flag("--exact-k", options.exact_k);
  solve_cmd->add_flag("--oracle", options.oracle);

  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite on seeded random instances");
  std::string suite;
  std::uint64_t verify_seed = 0;
  int trials = 100;
  verify_cmd->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"vertex-structure", "untight-graph", "proof-chain", "enumeration"}));
  verify_cmd->add_option("--seed", verify_seed);
  verify_cmd->add_option("--trials", trials)->check(CLI::NonNegativeNumber);

  auto* bench_cmd = app.add_subcommand("bench", "Tab-separated table over a directory of instances");
  std::string bench_dir, bench_algs = "fptas";
  SolveOptions bench_options;
  std::optional<int> bench_k;
  bench_cmd->add_option("dir", bench_dir)->required();
  bench_cmd->add_option("--algs", bench_algs);
  bench_cmd->add_option("--eps", bench_options.epsilon);
  bench_cmd->add_option("--k", bench_k)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_options.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (generate->parsed()) {
      if (random->parsed()) {
        spec.k = gen_k;
        emit(gen_random(spec), out_path, out);
      } else if (figure1->parsed()) {
        emit(gen_figure1(fig_s, fig_m), out_path, out);
      } else {
        emit(gen_subset_sum(parse_sizes(sizes_text), ss_d, ss_k), out_path, out);
      }
      return kOk;
    }
    if (solve_cmd->parsed()) {
      options.k = solve_k;
      const Instance inst = read_instance_file(in_path);
      auto [code, report] = solve(inst, options);
      out << report.to_text();
      return code;
    }
    if (verify_cmd->parsed()) {
      const VerifySummary summary = verify(suite, verify_seed, trials);
      out << "suite=" << summary.suite << "\nchecked=" << summary.checked << "\nviolations=" << summary.violations
          << "\n";
      if (summary.violations == 0) {
        out << "result=pass\n";
        return kOk;
      }
      out << "result=fail\nfirst_violation=" << *summary.first_violation << "\n";
      if (summary.counterexample) out << "counterexample:\n" << serialize(*summary.counterexample);
      return kViolation;
    }
    std::vector<std::string> algs;
    std::stringstream list(bench_algs);
    for (std::string alg; std::getline(list, alg, ',');) {
      if (std::find(algorithm_ids().begin(), algorithm_ids().end(), alg) == algorithm_ids().end()) {
        err << "usage error: unknown algorithm '" << alg << "'\n";
        return kUsage;
      }
      algs.push_back(alg);
    }
    bench_options.k = bench_k;
    out << bench_table(bench_dir, algs, bench_options);
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace caploc::cli
