#include "taskalloc/evaluator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace taskalloc {

double Totals::criterion(Criterion c) const {
  switch (c) {
    case Criterion::total_cost: return cost;
    case Criterion::total_effort: return effort_pm;
    case Criterion::cross_site_coupling: return coupling;
  }
  return cost;
}

namespace {

double collab_for(const ScenarioIndex& index, std::span<const std::size_t> sites, const OverheadTable& table,
                  std::size_t t) {
  double collab = 0.0;
  for (std::size_t u = 0; u < index.task_count(); ++u) {
    if (u == t || sites[u] == sites[t]) continue;
    const double w = index.coupling(t, u);
    if (w <= 0.0) continue;
    collab += w * index.pair_scale() * table.pair(sites[t], sites[u]);
  }
  return collab;
}

}  // namespace

double cross_site_coupling(const ScenarioIndex& index, std::span<const std::size_t> sites) {
  double total = 0.0;
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    for (std::size_t u = t + 1; u < index.task_count(); ++u) {
      if (sites[t] != sites[u]) total += index.coupling(t, u);
    }
  }
  return total;
}

double cross_site_coupling(const Scenario& scenario, const Assignment& assignment) {
  const ScenarioIndex index(scenario);
  return cross_site_coupling(index, index.to_indices(assignment));
}

Totals evaluate_totals(const ScenarioIndex& index, std::span<const std::size_t> sites, const OverheadTable& table) {
  Totals totals;
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    const double effort = index.baseline_pm(t) * table.multiplier(t, sites[t]) * (1.0 + collab_for(index, sites, table, t));
    totals.effort_pm += effort;
    totals.cost += effort * index.cost_rate(sites[t]);
  }
  totals.coupling = cross_site_coupling(index, sites);
  return totals;
}

EvaluationResult evaluate(const ScenarioIndex& index, std::span<const std::size_t> sites, const OverheadTable& table) {
  const auto& s = index.scenario();
  EvaluationResult result;
  result.per_task.reserve(index.task_count());
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    TaskResult r;
    r.task = s.tasks[t].id;
    r.site = s.sites[sites[t]].id;
    r.baseline_pm = index.baseline_pm(t);
    r.site_multiplier = table.multiplier(t, sites[t]);
    r.collab_overhead = collab_for(index, sites, table, t);
    r.effort_pm = r.baseline_pm * r.site_multiplier * (1.0 + r.collab_overhead);
    r.cost = r.effort_pm * index.cost_rate(sites[t]);

    const auto cell = table.cell_breakdown(t, sites[t]);
    std::vector<double> contributions(cell.begin(), cell.end());
    for (std::size_t u = 0; u < index.task_count(); ++u) {
      if (u == t || sites[u] == sites[t]) continue;
      const double w = index.coupling(t, u);
      if (w <= 0.0) continue;
      const auto pair = table.pair_breakdown(sites[t], sites[u]);
      for (std::size_t f = 0; f < contributions.size(); ++f) contributions[f] += w * index.pair_scale() * pair[f];
    }
    for (std::size_t f = 0; f < contributions.size(); ++f) {
      if (s.catalog[f].category == FactorCategory::task_pair) continue;
      r.factor_breakdown[s.catalog[f].id] = contributions[f];
    }

    result.total_effort_pm += r.effort_pm;
    result.total_cost += r.cost;
    result.per_task.push_back(std::move(r));
  }
  result.criteria_values[Criterion::total_effort] = result.total_effort_pm;
  result.criteria_values[Criterion::total_cost] = result.total_cost;
  result.criteria_values[Criterion::cross_site_coupling] = cross_site_coupling(index, sites);
  return result;
}

EvaluationResult evaluate(const ScenarioIndex& index, std::span<const std::size_t> sites, const EvaluationMode& mode) {
  const OverheadResolver resolver(mode, DrawStream(mode.sample_seed, 0));
  const OverheadTable table(index, resolver, sites, /*with_breakdown=*/true);
  return evaluate(index, sites, table);
}

EvaluationResult evaluate(const Scenario& scenario, const Assignment& assignment, const EvaluationMode& mode) {
  const ScenarioIndex index(scenario);
  const auto sites = index.to_indices(assignment);
  return evaluate(index, sites, mode);
}

std::vector<double> weighted_score(const std::vector<std::vector<double>>& values, const GqmGoal& goal) {
  std::vector<double> scores(values.size(), 0.0);
  for (std::size_t c = 0; c < goal.criteria.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : values) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    const double range = hi - lo;
    for (std::size_t a = 0; a < values.size(); ++a) {
      const double normalized = range > 0.0 ? (values[a][c] - lo) / range : 0.0;
      scores[a] += goal.criteria[c].weight * normalized;
    }
  }
  return scores;
}

std::vector<double> weighted_score(std::span<const EvaluationResult> results, const GqmGoal& goal) {
  std::vector<std::vector<double>> values;
  values.reserve(results.size());
  for (const auto& r : results) {
    std::vector<double> row;
    for (const auto& c : goal.criteria) row.push_back(r.criterion(c.criterion));
    values.push_back(std::move(row));
  }
  return weighted_score(values, goal);
}

ComparisonReport compare(const Scenario& scenario, std::span<const NamedAlternative> alternatives,
                         const std::optional<GqmGoal>& goal) {
  if (alternatives.empty()) throw Error("no_alternatives", "compare needs at least one alternative");
  std::set<std::string> labels;
  for (const auto& alt : alternatives) {
    if (!labels.insert(alt.label).second) {
      throw Error("duplicate_label", "alternative label '" + alt.label + "' is used twice");
    }
  }

  const ScenarioIndex index(scenario);
  ComparisonReport report;
  report.goal = goal.value_or(scenario.goal);
  for (const auto& task : scenario.tasks) report.tasks.emplace_back(task.id, task.name);

  std::vector<EvaluationResult> results;
  for (const auto& alt : alternatives) {
    results.push_back(evaluate(index, index.to_indices(alt.assignment)));
    report.alternatives.push_back({alt.label, alt.assignment, results.back()});
  }
  const auto scores = weighted_score(results, report.goal);
  std::vector<std::size_t> order(alternatives.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return alternatives[a].label < alternatives[b].label;
  });
  for (std::size_t i = 0; i < alternatives.size(); ++i) report.scores[alternatives[i].label] = scores[i];
  for (auto i : order) report.ranking.push_back(alternatives[i].label);
  return report;
}

}  // namespace taskalloc
