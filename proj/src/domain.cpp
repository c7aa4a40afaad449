#include "taskalloc/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace taskalloc {

namespace {

std::string join_codes(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.code;
    if (!issue.path.empty()) out += " at " + issue.path;
    if (!issue.message.empty()) out += ": " + issue.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(issues.empty() ? "invalid" : issues.front().code, "validation failed: " + join_codes(issues)),
      issues_(std::move(issues)) {}

std::string_view to_string(FactorCategory category) {
  switch (category) {
    case FactorCategory::site: return "site";
    case FactorCategory::site_pair: return "site_pair";
    case FactorCategory::task: return "task";
    case FactorCategory::task_pair: return "task_pair";
    case FactorCategory::task_site: return "task_site";
  }
  return "site";
}

std::optional<FactorCategory> parse_factor_category(std::string_view text) {
  for (auto c : {FactorCategory::site, FactorCategory::site_pair, FactorCategory::task,
                 FactorCategory::task_pair, FactorCategory::task_site}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::total_cost: return "total_cost";
    case Criterion::total_effort: return "total_effort";
    case Criterion::cross_site_coupling: return "cross_site_coupling";
  }
  return "total_cost";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  for (auto c : {Criterion::total_cost, Criterion::total_effort, Criterion::cross_site_coupling}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

GqmGoal GqmGoal::single(Criterion criterion) {
  GqmGoal goal;
  goal.criteria.push_back({criterion, 1.0});
  return goal;
}

std::optional<std::size_t> FactorDefinition::level_index(std::string_view level) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - levels.begin());
}

CouplingMatrix::Key CouplingMatrix::key(const Id& t, const Id& u) {
  return t < u ? Key{t, u} : Key{u, t};
}

void CouplingMatrix::set(const Id& t, const Id& u, double weight) {
  if (t == u) throw std::invalid_argument("coupling of task '" + t + "' with itself");
  entries_[key(t, u)] = weight;
}

double CouplingMatrix::weight(const Id& t, const Id& u) const {
  if (t == u) throw std::invalid_argument("coupling of task '" + t + "' with itself");
  auto it = entries_.find(key(t, u));
  return it == entries_.end() ? 0.0 : it->second;
}

const TriangularOverhead* ImpactModel::find(const Id& factor, const Id& level) const {
  auto it = overheads.find({factor, level});
  return it == overheads.end() ? nullptr : &it->second;
}

const Site* Scenario::find_site(std::string_view id) const {
  auto it = std::find_if(sites.begin(), sites.end(), [&](const Site& s) { return s.id == id; });
  return it == sites.end() ? nullptr : &*it;
}

const Task* Scenario::find_task(std::string_view id) const {
  auto it = std::find_if(tasks.begin(), tasks.end(), [&](const Task& t) { return t.id == id; });
  return it == tasks.end() ? nullptr : &*it;
}

const FactorDefinition* Scenario::find_factor(std::string_view id) const {
  auto it = std::find_if(catalog.begin(), catalog.end(), [&](const FactorDefinition& f) { return f.id == id; });
  return it == catalog.end() ? nullptr : &*it;
}

const SitePairRelation* Scenario::find_pair(const Id& a, const Id& b) const {
  const auto& lo = a < b ? a : b;
  const auto& hi = a < b ? b : a;
  auto it = std::find_if(site_pairs.begin(), site_pairs.end(), [&](const SitePairRelation& p) {
    return (p.site_a == lo && p.site_b == hi) || (p.site_a == hi && p.site_b == lo);
  });
  return it == site_pairs.end() ? nullptr : &*it;
}

const NamedAlternative* Scenario::find_alternative(std::string_view label) const {
  auto it = std::find_if(alternatives.begin(), alternatives.end(),
                         [&](const NamedAlternative& a) { return a.label == label; });
  return it == alternatives.end() ? nullptr : &*it;
}

Assignment uniform_assignment(const Scenario& scenario, const Id& site) {
  Assignment out;
  for (const auto& task : scenario.tasks) {
    auto pin = scenario.pinned.find(task.id);
    out.mapping[task.id] = pin == scenario.pinned.end() ? site : pin->second;
  }
  return out;
}

Assignment with_pins(const Scenario& scenario, Assignment partial) {
  for (const auto& [task, site] : scenario.pinned) partial.mapping.try_emplace(task, site);
  return partial;
}

void check_assignment(const Scenario& scenario, const Assignment& assignment) {
  for (const auto& [task, site] : assignment.mapping) {
    if (!scenario.find_task(task)) {
      throw AssignmentError("unknown_task", task, "assignment names unknown task '" + task + "'");
    }
  }
  for (const auto& task : scenario.tasks) {
    auto it = assignment.mapping.find(task.id);
    if (it == assignment.mapping.end()) {
      throw AssignmentError("unassigned_task", task.id, "task '" + task.id + "' is not assigned to a site");
    }
    if (!scenario.find_site(it->second)) {
      throw AssignmentError("unknown_site", task.id,
                            "task '" + task.id + "' is assigned to unknown site '" + it->second + "'");
    }
    auto pin = scenario.pinned.find(task.id);
    if (pin != scenario.pinned.end() && pin->second != it->second) {
      throw AssignmentError("pin_violated", task.id,
                            "task '" + task.id + "' is pinned to '" + pin->second + "'");
    }
  }
}

}  // namespace taskalloc
