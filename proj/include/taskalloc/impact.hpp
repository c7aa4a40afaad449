#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "taskalloc/domain.hpp"
#include "taskalloc/overhead.hpp"
#include "taskalloc/scenario_index.hpp"

namespace taskalloc {

// Running sums of every resolved draw, per (factor, level).
class DrawRecorder {
 public:
  DrawRecorder(std::size_t factors, std::size_t max_levels);

  void record(std::size_t factor, std::size_t level, double value);
  void merge(const DrawRecorder& other);

  std::uint64_t count(std::size_t factor, std::size_t level) const { return counts_[factor * stride_ + level]; }
  double sum(std::size_t factor, std::size_t level) const { return sums_[factor * stride_ + level]; }

 private:
  std::size_t stride_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
};

// Turns assessed levels into overhead fractions under one evaluation mode.
// Sampled draws are keyed by (factor, entity): a site's capability is drawn
// once per stream and shared by every task placed there.
class OverheadResolver {
 public:
  OverheadResolver(const EvaluationMode& mode, DrawStream draws, DrawRecorder* recorder = nullptr)
      : mode_(mode), draws_(draws), recorder_(recorder) {}

  double resolve(const ScenarioIndex& index, std::size_t factor, std::size_t level, std::size_t entity_a,
                 std::size_t entity_b) const;

  const EvaluationMode& mode() const { return mode_; }

 private:
  EvaluationMode mode_;
  DrawStream draws_;
  DrawRecorder* recorder_;
};

// 1 + sum of resolved site, task and task-site overheads. `contributions`,
// when non-empty, receives the per-catalog-factor overheads (size
// factor_count()). Throws EvaluationError naming factor and entity when a
// level was never assessed.
double cell_multiplier(const ScenarioIndex& index, std::size_t task, std::size_t site,
                       const OverheadResolver& resolver, std::span<double> contributions = {});

// Sum of resolved site-pair overheads between two distinct sites (absent
// relation -> nominal). Not yet scaled by coupling or pair_scale.
double pair_overhead(const ScenarioIndex& index, std::size_t a, std::size_t b, const OverheadResolver& resolver,
                     std::span<double> contributions = {});

// Resolved multipliers and pair overheads for one draw stream. Cells that
// cannot be computed keep their error and throw only when read.
class OverheadTable {
 public:
  // Every (task, site) cell and every site pair.
  OverheadTable(const ScenarioIndex& index, const OverheadResolver& resolver, bool with_breakdown = false);
  // Only the cells and pairs used by `sites`.
  OverheadTable(const ScenarioIndex& index, const OverheadResolver& resolver, std::span<const std::size_t> sites,
                bool with_breakdown = false);

  double multiplier(std::size_t task, std::size_t site) const;
  double pair(std::size_t a, std::size_t b) const;
  std::span<const double> cell_breakdown(std::size_t task, std::size_t site) const;
  std::span<const double> pair_breakdown(std::size_t a, std::size_t b) const;
  bool has_breakdown() const { return with_breakdown_; }

 private:
  void fill_cell(const ScenarioIndex& index, const OverheadResolver& resolver, std::size_t t, std::size_t s);
  void fill_pair(const ScenarioIndex& index, const OverheadResolver& resolver, std::size_t a, std::size_t b);

  std::size_t sites_;
  std::size_t factors_;
  bool with_breakdown_;
  std::vector<double> multiplier_;
  std::vector<double> pair_;
  std::vector<std::string> cell_error_;
  std::vector<std::string> pair_error_;
  std::vector<double> cell_breakdown_;
  std::vector<double> pair_breakdown_;
};

double site_multiplier(const Scenario& scenario, const Id& task, const Id& site, const EvaluationMode& mode,
                       const DrawStream& draws);

// Sum over coupled partners on other sites of
// coupling * pair_scale * (resolved pair overheads).
double collaboration_overhead(const Scenario& scenario, const Id& task, const Assignment& assignment,
                              const EvaluationMode& mode, const DrawStream& draws);

}  // namespace taskalloc
