#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "caploc/model.hpp"

namespace caploc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kViolation = 3 };

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct RunReport {
  std::string digest;
  std::string algorithm;
  KeyValues parameters;
  std::string status;  // "ok" or "infeasible"
  std::optional<CostBreakdown> cost;
  int open_count = 0;
  std::vector<int> open;
  double wall_ms = 0;
  KeyValues ratio;  // filled when the oracle ran

  [[nodiscard]] std::string to_text() const;
};

struct SolveOptions {
  std::string algorithm;
  std::optional<int> k;
  std::string epsilon = "1/10";
  int max_m = 4;
  int swap_width = 1;
  std::uint64_t seed = 0;
  std::string gamma = "78078/100000";
  bool exact_k = false;
  bool oracle = false;
};

// Exit code alongside the report; kViolation when the oracle shows the
// achieved ratio above the algorithm's bound. Throws std::invalid_argument
// on unmet preconditions.
std::pair<int, RunReport> solve(const Instance& inst, const SolveOptions& options);

const std::vector<std::string>& algorithm_ids();

// One row per (file, algorithm), files sorted by path and algorithms by id.
std::string bench_table(const std::string& directory, std::vector<std::string> algorithms,
                        const SolveOptions& base);

// Returns a description of the first violation, if any.
using Violation = std::function<std::optional<std::string>(const Instance&)>;

// Greedily drops facilities and clients while `violation` still fires.
Instance minimize_counterexample(const Instance& inst, const Violation& violation);

struct VerifySummary {
  std::string suite;
  int trials = 0;
  int checked = 0;
  int violations = 0;
  std::optional<std::string> first_violation;
  std::optional<Instance> counterexample;  // already minimized
};

// Throws std::invalid_argument for an unknown suite name.
VerifySummary verify(const std::string& suite, std::uint64_t seed, int trials);

// Entry point shared by the binary and the tests; `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caploc::cli
