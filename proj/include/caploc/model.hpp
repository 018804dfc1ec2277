#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caploc/rational.hpp"

namespace caploc {

struct Facility {
  std::int64_t capacity = 0;
  Rational opening_cost;
  friend bool operator==(const Facility&, const Facility&) = default;
};

struct Client {
  std::int64_t demand = 0;
  friend bool operator==(const Client&, const Client&) = default;
};

// A hard-capacitated k-facility location instance. Sites are numbered with
// facilities first (0..n-1) followed by clients (n..n+m-1); the metric is a
// dense (n+m)x(n+m) matrix over all sites.
class Instance {
 public:
  Instance() = default;
  // Throws std::invalid_argument if the metric is not (n+m)^2 entries or
  // k is not positive. Semantic checks live in validate_instance.
  Instance(std::vector<Facility> facilities, std::vector<Client> clients,
           std::vector<Rational> metric, std::optional<int> k = std::nullopt);

  [[nodiscard]] int num_facilities() const { return static_cast<int>(facilities_.size()); }
  [[nodiscard]] int num_clients() const { return static_cast<int>(clients_.size()); }
  [[nodiscard]] int num_sites() const { return num_facilities() + num_clients(); }

  [[nodiscard]] const std::vector<Facility>& facilities() const { return facilities_; }
  [[nodiscard]] const std::vector<Client>& clients() const { return clients_; }
  [[nodiscard]] const Facility& facility(int i) const { return facilities_.at(i); }
  [[nodiscard]] const Client& client(int j) const { return clients_.at(j); }
  [[nodiscard]] std::optional<int> k() const { return k_; }

  [[nodiscard]] int client_site(int j) const { return num_facilities() + j; }
  [[nodiscard]] const Rational& distance(int site_a, int site_b) const {
    return metric_[static_cast<size_t>(site_a) * num_sites() + site_b];
  }
  // Unit cost c_ij for facility i serving client j.
  [[nodiscard]] const Rational& unit_cost(int i, int j) const {
    return distance(i, client_site(j));
  }
  [[nodiscard]] const std::vector<Rational>& metric() const { return metric_; }

  [[nodiscard]] std::int64_t total_demand() const;
  [[nodiscard]] bool uniform_capacity() const;
  [[nodiscard]] bool uniform_opening_cost() const;

  [[nodiscard]] Instance with_k(std::optional<int> k) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Facility> facilities_;
  std::vector<Client> clients_;
  std::vector<Rational> metric_;
  std::optional<int> k_;
};

// (y, x) of the mixed integer program: binary open vector and a
// facilities x clients flow matrix stored row-major.
struct IntegralSolution {
  std::vector<bool> open;
  std::vector<Rational> flow;
  int num_clients = 0;

  IntegralSolution() = default;
  IntegralSolution(int facilities, int clients)
      : open(facilities, false), flow(static_cast<size_t>(facilities) * clients), num_clients(clients) {}

  [[nodiscard]] int num_facilities() const { return static_cast<int>(open.size()); }
  Rational& at(int i, int j) { return flow[static_cast<size_t>(i) * num_clients + j]; }
  [[nodiscard]] const Rational& at(int i, int j) const {
    return flow[static_cast<size_t>(i) * num_clients + j];
  }
  [[nodiscard]] int open_count() const;
  [[nodiscard]] Rational served_by(int i) const;
};

struct CostBreakdown {
  Rational service;
  Rational opening;
  Rational total;
};

struct ValidationReport {
  std::vector<std::string> issues;
  [[nodiscard]] bool ok() const { return issues.empty(); }
};

ValidationReport validate_instance(const Instance& inst, bool check_triangle);

// Exact objective value; does not check feasibility. Throws
// std::invalid_argument on dimension mismatch.
CostBreakdown evaluate(const Instance& inst, const IntegralSolution& sol);

enum class CardinalityMode { kAtMost, kExactly };

// Empty iff demand, capacity, cardinality, nonnegativity and binary
// constraints all hold exactly. `k` defaults to the instance's bound.
std::vector<std::string> check_feasible(const Instance& inst, const IntegralSolution& sol,
                                        std::optional<int> k = std::nullopt,
                                        CardinalityMode mode = CardinalityMode::kAtMost);

// Builds a metric that realises the given client distances for a single
// client: facility-facility distances go through the client.
std::vector<Rational> star_metric(const std::vector<Rational>& facility_to_client);

Instance gen_figure1(std::int64_t s, std::int64_t M);
Instance gen_subset_sum(const std::vector<std::int64_t>& sizes, std::int64_t d, int k);

struct IntRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct RandomSpec {
  std::uint64_t seed = 0;
  int facilities = 4;
  int clients = 2;
  std::int64_t box = 20;
  IntRange capacity{1, 10};
  IntRange demand{1, 10};
  IntRange opening_cost{0, 10};
  std::optional<int> k;
};

// Deterministic for a fixed spec. Sites are integer grid points inside
// [0, box]^2 and the metric is their L1 distance.
Instance gen_random(const RandomSpec& spec);

}  // namespace caploc
