#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taskalloc/domain.hpp"
#include "taskalloc/impact.hpp"
#include "taskalloc/scenario_index.hpp"

namespace taskalloc {

struct TaskResult {
  Id task;
  Id site;
  double effort_pm = 0.0;
  double cost = 0.0;  // thousand EUR
  double baseline_pm = 0.0;
  double site_multiplier = 1.0;
  double collab_overhead = 0.0;
  // factor-id -> overhead fraction contributed by that factor
  std::map<Id, double> factor_breakdown;

  bool operator==(const TaskResult&) const = default;
};

struct EvaluationResult {
  std::vector<TaskResult> per_task;
  double total_effort_pm = 0.0;
  double total_cost = 0.0;
  std::map<Criterion, double> criteria_values;

  double criterion(Criterion c) const { return criteria_values.at(c); }

  bool operator==(const EvaluationResult&) const = default;
};

// Criterion totals without the per-task detail; what search loops need.
struct Totals {
  double effort_pm = 0.0;
  double cost = 0.0;
  double coupling = 0.0;

  double criterion(Criterion c) const;
};

// effort = baseline * site_multiplier * (1 + collab_overhead);
// cost = effort * site cost rate.
EvaluationResult evaluate(const Scenario& scenario, const Assignment& assignment,
                          const EvaluationMode& mode = EvaluationMode::deterministic());
EvaluationResult evaluate(const ScenarioIndex& index, std::span<const std::size_t> sites,
                          const EvaluationMode& mode = EvaluationMode::deterministic());
// Against an already resolved table. The table must carry a breakdown.
EvaluationResult evaluate(const ScenarioIndex& index, std::span<const std::size_t> sites, const OverheadTable& table);

Totals evaluate_totals(const ScenarioIndex& index, std::span<const std::size_t> sites, const OverheadTable& table);

// Sum of coupling weights over task pairs placed on different sites.
double cross_site_coupling(const Scenario& scenario, const Assignment& assignment);
double cross_site_coupling(const ScenarioIndex& index, std::span<const std::size_t> sites);

// Min-max normalizes each goal criterion across `results` (a constant
// criterion maps to 0) and returns the weighted sums. Lower is better.
std::vector<double> weighted_score(std::span<const EvaluationResult> results, const GqmGoal& goal);
// Same, on a raw value table: values[alternative][criterion-position in goal].
std::vector<double> weighted_score(const std::vector<std::vector<double>>& values, const GqmGoal& goal);

struct ComparisonReport {
  struct Alternative {
    std::string label;
    Assignment assignment;
    EvaluationResult result;

    bool operator==(const Alternative&) const = default;
  };

  std::vector<Alternative> alternatives;
  std::map<std::string, double> scores;
  // Ascending score; ties by label.
  std::vector<std::string> ranking;
  GqmGoal goal;
  // Task ids and names in scenario order, for rendering.
  std::vector<std::pair<Id, std::string>> tasks;

  const std::string& winner() const { return ranking.front(); }
};

// Deterministic evaluation of every alternative scored under `goal` (the
// scenario's goal when omitted). Throws Error("duplicate_label") or
// Error("no_alternatives").
ComparisonReport compare(const Scenario& scenario, std::span<const NamedAlternative> alternatives,
                         const std::optional<GqmGoal>& goal = std::nullopt);

}  // namespace taskalloc
