#pragma once

#include <cstdint>
#include <optional>

#include "caploc/model.hpp"
#include "caploc/rational.hpp"

namespace caploc {

inline constexpr int kDefaultOracleLimit = 15;

struct OracleResult {
  Rational optimum;
  IntegralSolution witness;
  std::int64_t explored = 0;  // open sets solved by transportation
};

// Exhaustive search over open sets of the allowed size. Sets whose capacity
// falls short of total demand are skipped without solving. Throws
// std::invalid_argument when n exceeds `limit` or k < 1.
std::optional<OracleResult> brute_force_ckfl(const Instance& inst, int k, CardinalityMode mode,
                                             int limit = kDefaultOracleLimit);

// No cardinality bound.
std::optional<OracleResult> brute_force_cfl(const Instance& inst, int limit = kDefaultOracleLimit);

// Uncapacitated k-median: capacities and opening costs ignored, each client
// sent whole to its nearest open center. The witness carries that
// assignment and ignores capacities.
OracleResult brute_force_ukm(const Instance& inst, int k, int limit = kDefaultOracleLimit);

}  // namespace caploc
