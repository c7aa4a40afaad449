#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "taskalloc/domain.hpp"

namespace taskalloc {

// Dense, index-based view of a validated scenario. Tasks, sites and factors
// are numbered in scenario order; the hot evaluation loops work on this.
class ScenarioIndex {
 public:
  static constexpr std::size_t kMissing = std::numeric_limits<std::size_t>::max();

  // Throws ValidationError if the scenario has violations.
  explicit ScenarioIndex(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  std::size_t task_count() const { return scenario_.tasks.size(); }
  std::size_t site_count() const { return scenario_.sites.size(); }
  std::size_t factor_count() const { return scenario_.catalog.size(); }

  std::optional<std::size_t> task_index(std::string_view id) const;
  std::optional<std::size_t> site_index(std::string_view id) const;

  double coupling(std::size_t t, std::size_t u) const { return coupling_[t * task_count() + u]; }
  double baseline_pm(std::size_t t) const { return baseline_pm_[t]; }
  double baseline_total() const { return baseline_total_; }
  double cost_rate(std::size_t s) const { return scenario_.sites[s].cost_rate; }
  double pair_scale() const { return scenario_.impact_model.pair_scale; }
  std::optional<std::size_t> pinned_site(std::size_t t) const { return pinned_[t]; }

  // Catalog indices per category, in catalog order.
  std::span<const std::size_t> factors_of(FactorCategory category) const;
  const TriangularOverhead& triangle(std::size_t factor, std::size_t level) const;
  std::size_t max_levels() const { return max_levels_; }

  // Assessed level index (kMissing when unassessed). `k` indexes
  // factors_of(category).
  std::size_t site_level(std::size_t s, std::size_t k) const;
  std::size_t task_level(std::size_t t, std::size_t k) const;
  std::size_t task_site_level(std::size_t t, std::size_t s, std::size_t k) const;
  std::size_t pair_level(std::size_t a, std::size_t b, std::size_t k) const;

  // Throws AssignmentError like check_assignment.
  std::vector<std::size_t> to_indices(const Assignment& assignment) const;
  Assignment to_assignment(std::span<const std::size_t> sites) const;

 private:
  Scenario scenario_;
  std::vector<double> coupling_;
  std::vector<double> baseline_pm_;
  double baseline_total_ = 0.0;
  std::vector<std::optional<std::size_t>> pinned_;
  std::vector<std::vector<std::size_t>> by_category_;
  std::vector<std::vector<TriangularOverhead>> triangles_;
  std::size_t max_levels_ = 0;
  std::vector<std::size_t> site_levels_;
  std::vector<std::size_t> task_levels_;
  std::vector<std::size_t> task_site_levels_;
  std::vector<std::size_t> pair_levels_;
};

}  // namespace taskalloc
