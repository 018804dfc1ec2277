#include "caploc/model.hpp"

#include <cstdlib>
#include <stdexcept>

#include "caploc/rng.hpp"

namespace caploc {

Instance::Instance(std::vector<Facility> facilities, std::vector<Client> clients,
                   std::vector<Rational> metric, std::optional<int> k)
    : facilities_(std::move(facilities)),
      clients_(std::move(clients)),
      metric_(std::move(metric)),
      k_(k) {
  const size_t sites = facilities_.size() + clients_.size();
  if (metric_.size() != sites * sites) {
    throw std::invalid_argument("metric has " + std::to_string(metric_.size()) +
                                " entries, expected " + std::to_string(sites * sites));
  }
  if (k_ && *k_ <= 0) throw std::invalid_argument("k must be positive");
}

std::int64_t Instance::total_demand() const {
  std::int64_t total = 0;
  for (const auto& c : clients_) total += c.demand;
  return total;
}

bool Instance::uniform_capacity() const {
  for (const auto& f : facilities_) {
    if (f.capacity != facilities_.front().capacity) return false;
  }
  return true;
}

bool Instance::uniform_opening_cost() const {
  for (const auto& f : facilities_) {
    if (f.opening_cost != facilities_.front().opening_cost) return false;
  }
  return true;
}

Instance Instance::with_k(std::optional<int> k) const {
  Instance copy = *this;
  if (k && *k <= 0) throw std::invalid_argument("k must be positive");
  copy.k_ = k;
  return copy;
}

int IntegralSolution::open_count() const {
  int count = 0;
  for (bool b : open) count += b ? 1 : 0;
  return count;
}

Rational IntegralSolution::served_by(int i) const {
  Rational total = 0;
  for (int j = 0; j < num_clients; ++j) total += at(i, j);
  return total;
}

ValidationReport validate_instance(const Instance& inst, bool check_triangle) {
  ValidationReport report;
  const int n = inst.num_facilities();
  const int sites = inst.num_sites();
  auto name = [n](int site) {
    return site < n ? "facility " + std::to_string(site) : "client " + std::to_string(site - n);
  };
  for (int i = 0; i < n; ++i) {
    if (inst.facility(i).capacity <= 0) {
      report.issues.push_back("facility " + std::to_string(i) + " has nonpositive capacity");
    }
    if (inst.facility(i).opening_cost < 0) {
      report.issues.push_back("facility " + std::to_string(i) + " has negative opening cost");
    }
  }
  for (int j = 0; j < inst.num_clients(); ++j) {
    if (inst.client(j).demand <= 0) {
      report.issues.push_back("client " + std::to_string(j) + " has nonpositive demand");
    }
  }
  for (int a = 0; a < sites; ++a) {
    if (inst.distance(a, a) != 0) report.issues.push_back("nonzero diagonal at " + name(a));
    for (int b = a + 1; b < sites; ++b) {
      if (inst.distance(a, b) < 0 || inst.distance(b, a) < 0) {
        report.issues.push_back("negative distance between " + name(a) + " and " + name(b));
      }
      if (inst.distance(a, b) != inst.distance(b, a)) {
        report.issues.push_back("asymmetric distance between " + name(a) + " and " + name(b));
      }
    }
  }
  if (check_triangle) {
    for (int a = 0; a < sites; ++a) {
      for (int b = 0; b < sites; ++b) {
        for (int c = 0; c < sites; ++c) {
          if (inst.distance(a, c) > inst.distance(a, b) + inst.distance(b, c)) {
            report.issues.push_back("triangle inequality fails: d(" + name(a) + ", " + name(c) +
                                    ") > d(" + name(a) + ", " + name(b) + ") + d(" + name(b) +
                                    ", " + name(c) + ")");
          }
        }
      }
    }
  }
  return report;
}

namespace {

void require_dimensions(const Instance& inst, const IntegralSolution& sol) {
  if (sol.num_facilities() != inst.num_facilities() || sol.num_clients != inst.num_clients() ||
      sol.flow.size() != static_cast<size_t>(inst.num_facilities()) * inst.num_clients()) {
    throw std::invalid_argument("solution dimensions do not match the instance");
  }
}

}  // namespace

CostBreakdown evaluate(const Instance& inst, const IntegralSolution& sol) {
  require_dimensions(inst, sol);
  CostBreakdown cost;
  for (int i = 0; i < inst.num_facilities(); ++i) {
    for (int j = 0; j < inst.num_clients(); ++j) cost.service += inst.unit_cost(i, j) * sol.at(i, j);
    if (sol.open[i]) cost.opening += inst.facility(i).opening_cost;
  }
  cost.total = cost.service + cost.opening;
  return cost;
}

std::vector<std::string> check_feasible(const Instance& inst, const IntegralSolution& sol,
                                        std::optional<int> k, CardinalityMode mode) {
  std::vector<std::string> violations;
  if (sol.num_facilities() != inst.num_facilities() || sol.num_clients != inst.num_clients() ||
      sol.flow.size() != static_cast<size_t>(inst.num_facilities()) * inst.num_clients()) {
    violations.push_back("dimension mismatch");
    return violations;
  }
  const int n = inst.num_facilities();
  const int m = inst.num_clients();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (sol.at(i, j) < 0) {
        violations.push_back("negative flow on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    Rational served = 0;
    for (int i = 0; i < n; ++i) served += sol.at(i, j);
    if (served != inst.client(j).demand) {
      violations.push_back("client " + std::to_string(j) + " receives " + to_string(served) +
                           " but demands " + std::to_string(inst.client(j).demand));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Rational served = sol.served_by(i);
    const std::int64_t cap = sol.open[i] ? inst.facility(i).capacity : 0;
    if (served > cap) {
      violations.push_back("capacity of facility " + std::to_string(i) + " exceeded: " +
                           to_string(served) + " > " + std::to_string(cap));
    }
  }
  const std::optional<int> bound = k ? k : inst.k();
  if (bound) {
    const int opened = sol.open_count();
    if (mode == CardinalityMode::kAtMost && opened > *bound) {
      violations.push_back("cardinality violated: " + std::to_string(opened) + " > " +
                           std::to_string(*bound));
    }
    if (mode == CardinalityMode::kExactly && opened != *bound) {
      violations.push_back("cardinality violated: " + std::to_string(opened) +
                           " != " + std::to_string(*bound));
    }
  }
  return violations;
}

std::vector<Rational> star_metric(const std::vector<Rational>& facility_to_client) {
  const size_t n = facility_to_client.size();
  const size_t sites = n + 1;
  std::vector<Rational> metric(sites * sites);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      if (a != b) metric[a * sites + b] = facility_to_client[a] + facility_to_client[b];
    }
    metric[a * sites + n] = facility_to_client[a];
    metric[n * sites + a] = facility_to_client[a];
  }
  return metric;
}

Instance gen_figure1(std::int64_t s, std::int64_t M) {
  if (s < 2 || M < 2) throw std::invalid_argument("figure-1 family needs s >= 2 and M >= 2");
  std::vector<Facility> facilities{{s, 0}, {s, 0}, {M * s, 0}, {s + 1, 0}};
  std::vector<Client> clients{{2 * s + 1}};
  std::vector<Rational> to_client{0, 0, 100, 1};
  return Instance(std::move(facilities), std::move(clients), star_metric(to_client), 2);
}

Instance gen_subset_sum(const std::vector<std::int64_t>& sizes, std::int64_t d, int k) {
  std::vector<Facility> facilities;
  std::vector<Rational> to_client;
  for (std::int64_t size : sizes) {
    if (size < 2) throw std::invalid_argument("subset-sum sizes must be at least 2");
    facilities.push_back({size, 0});
    to_client.push_back(1 - make_rational(1, size));
  }
  if (d <= 0) throw std::invalid_argument("demand must be positive");
  return Instance(std::move(facilities), {{d}}, star_metric(to_client), k);
}

Instance gen_random(const RandomSpec& spec) {
  if (spec.facilities <= 0 || spec.clients <= 0) {
    throw std::invalid_argument("need at least one facility and one client");
  }
  const auto check = [](const IntRange& r, const char* what) {
    if (r.lo > r.hi) throw std::invalid_argument(std::string("empty ") + what + " range");
  };
  check(spec.capacity, "capacity");
  check(spec.demand, "demand");
  check(spec.opening_cost, "opening cost");
  if (spec.capacity.lo <= 0 || spec.demand.lo <= 0) {
    throw std::invalid_argument("capacities and demands must be positive");
  }
  if (spec.opening_cost.lo < 0) throw std::invalid_argument("opening costs must be nonnegative");
  if (spec.box < 0) throw std::invalid_argument("box must be nonnegative");

  const SplitRng root(spec.seed);
  SplitRng points = root.split("points");
  SplitRng caps = root.split("capacity");
  SplitRng demands = root.split("demand");
  SplitRng opening = root.split("opening");

  const int sites = spec.facilities + spec.clients;
  std::vector<std::pair<std::int64_t, std::int64_t>> coords(sites);
  for (auto& [x, y] : coords) {
    x = points.uniform(0, spec.box);
    y = points.uniform(0, spec.box);
  }
  std::vector<Facility> facilities(spec.facilities);
  for (auto& f : facilities) {
    f.capacity = caps.uniform(spec.capacity.lo, spec.capacity.hi);
    f.opening_cost = make_rational(opening.uniform(spec.opening_cost.lo, spec.opening_cost.hi));
  }
  std::vector<Client> clients(spec.clients);
  for (auto& c : clients) c.demand = demands.uniform(spec.demand.lo, spec.demand.hi);

  std::vector<Rational> metric(static_cast<size_t>(sites) * sites);
  for (int a = 0; a < sites; ++a) {
    for (int b = 0; b < sites; ++b) {
      metric[static_cast<size_t>(a) * sites + b] = make_rational(
          std::llabs(coords[a].first - coords[b].first) + std::llabs(coords[a].second - coords[b].second));
    }
  }
  return Instance(std::move(facilities), std::move(clients), std::move(metric), spec.k);
}

}  // namespace caploc
