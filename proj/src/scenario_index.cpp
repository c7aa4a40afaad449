#include "taskalloc/scenario_index.hpp"

#include <algorithm>

namespace taskalloc {

namespace {

constexpr std::size_t kCategories = 5;

std::size_t category_slot(FactorCategory c) { return static_cast<std::size_t>(c); }

}  // namespace

ScenarioIndex::ScenarioIndex(Scenario scenario) : scenario_(std::move(scenario)) {
  auto report = validate_scenario(scenario_);
  if (!report.ok()) throw ValidationError(std::move(report.violations));

  const std::size_t nt = task_count();
  const std::size_t ns = site_count();
  const std::size_t nf = factor_count();

  coupling_.assign(nt * nt, 0.0);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t u = t + 1; u < nt; ++u) {
      const double w = scenario_.coupling.weight(scenario_.tasks[t].id, scenario_.tasks[u].id);
      coupling_[t * nt + u] = w;
      coupling_[u * nt + t] = w;
    }
  }

  const auto per_task = baseline_per_task(scenario_.baseline);
  baseline_pm_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) baseline_pm_[t] = per_task.at(scenario_.tasks[t].id);
  baseline_total_ = taskalloc::baseline_total(scenario_.baseline);

  pinned_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    auto it = scenario_.pinned.find(scenario_.tasks[t].id);
    if (it != scenario_.pinned.end()) pinned_[t] = site_index(it->second);
  }

  by_category_.resize(kCategories);
  triangles_.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& def = scenario_.catalog[f];
    by_category_[category_slot(def.category)].push_back(f);
    max_levels_ = std::max(max_levels_, def.levels.size());
    for (const auto& level : def.levels) triangles_[f].push_back(*scenario_.impact_model.find(def.id, level));
  }

  auto level_of = [&](const LevelMap& values, std::size_t f) {
    auto it = values.find(scenario_.catalog[f].id);
    if (it == values.end()) return kMissing;
    return *scenario_.catalog[f].level_index(it->second);
  };

  const auto& site_f = factors_of(FactorCategory::site);
  site_levels_.resize(ns * site_f.size());
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t k = 0; k < site_f.size(); ++k) {
      site_levels_[s * site_f.size() + k] = level_of(scenario_.sites[s].factor_values, site_f[k]);
    }
  }

  const auto& task_f = factors_of(FactorCategory::task);
  task_levels_.resize(nt * task_f.size());
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t k = 0; k < task_f.size(); ++k) {
      task_levels_[t * task_f.size() + k] = level_of(scenario_.tasks[t].factor_values, task_f[k]);
    }
  }

  const auto& ts_f = factors_of(FactorCategory::task_site);
  task_site_levels_.assign(nt * ns * ts_f.size(), kMissing);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t s = 0; s < ns; ++s) {
      auto it = scenario_.assessment.task_site_values.find({scenario_.tasks[t].id, scenario_.sites[s].id});
      if (it == scenario_.assessment.task_site_values.end()) continue;
      for (std::size_t k = 0; k < ts_f.size(); ++k) {
        task_site_levels_[(t * ns + s) * ts_f.size() + k] = level_of(it->second, ts_f[k]);
      }
    }
  }

  const auto& pair_f = factors_of(FactorCategory::site_pair);
  pair_levels_.assign(ns * ns * pair_f.size(), 0);
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      if (a == b) continue;
      const auto* relation = scenario_.find_pair(scenario_.sites[a].id, scenario_.sites[b].id);
      if (!relation) continue;  // nominal
      for (std::size_t k = 0; k < pair_f.size(); ++k) {
        pair_levels_[(a * ns + b) * pair_f.size() + k] = level_of(relation->factor_values, pair_f[k]);
      }
    }
  }
}

std::optional<std::size_t> ScenarioIndex::task_index(std::string_view id) const {
  for (std::size_t t = 0; t < scenario_.tasks.size(); ++t) {
    if (scenario_.tasks[t].id == id) return t;
  }
  return std::nullopt;
}

std::optional<std::size_t> ScenarioIndex::site_index(std::string_view id) const {
  for (std::size_t s = 0; s < scenario_.sites.size(); ++s) {
    if (scenario_.sites[s].id == id) return s;
  }
  return std::nullopt;
}

std::span<const std::size_t> ScenarioIndex::factors_of(FactorCategory category) const {
  return by_category_[category_slot(category)];
}

const TriangularOverhead& ScenarioIndex::triangle(std::size_t factor, std::size_t level) const {
  return triangles_[factor][level];
}

std::size_t ScenarioIndex::site_level(std::size_t s, std::size_t k) const {
  return site_levels_[s * factors_of(FactorCategory::site).size() + k];
}

std::size_t ScenarioIndex::task_level(std::size_t t, std::size_t k) const {
  return task_levels_[t * factors_of(FactorCategory::task).size() + k];
}

std::size_t ScenarioIndex::task_site_level(std::size_t t, std::size_t s, std::size_t k) const {
  return task_site_levels_[(t * site_count() + s) * factors_of(FactorCategory::task_site).size() + k];
}

std::size_t ScenarioIndex::pair_level(std::size_t a, std::size_t b, std::size_t k) const {
  return pair_levels_[(a * site_count() + b) * factors_of(FactorCategory::site_pair).size() + k];
}

std::vector<std::size_t> ScenarioIndex::to_indices(const Assignment& assignment) const {
  check_assignment(scenario_, assignment);
  std::vector<std::size_t> out(task_count());
  for (std::size_t t = 0; t < task_count(); ++t) {
    out[t] = *site_index(assignment.mapping.at(scenario_.tasks[t].id));
  }
  return out;
}

Assignment ScenarioIndex::to_assignment(std::span<const std::size_t> sites) const {
  Assignment out;
  for (std::size_t t = 0; t < task_count(); ++t) out.mapping[scenario_.tasks[t].id] = scenario_.sites[sites[t]].id;
  return out;
}

}  // namespace taskalloc
