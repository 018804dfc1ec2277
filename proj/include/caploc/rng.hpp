#pragma once

#include <cstdint>
#include <string_view>

namespace caploc {

// Splittable deterministic generator (splitmix64). Every random stream in the
// project is derived from a root seed by name, so no ambient entropy leaks in.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}

  // Independent child stream, stable for a given (state, name) pair.
  [[nodiscard]] SplitRng split(std::string_view name) const;

  std::uint64_t next();

  // Uniform integer in [lo, hi]; requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

}  // namespace caploc
