#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taskalloc/baseline.hpp"
#include "taskalloc/errors.hpp"
#include "taskalloc/overhead.hpp"

namespace taskalloc {

// factor-id -> level-id
using LevelMap = std::map<Id, Id>;

enum class FactorCategory { site, site_pair, task, task_pair, task_site };

std::string_view to_string(FactorCategory category);
std::optional<FactorCategory> parse_factor_category(std::string_view text);

struct FactorDefinition {
  Id id;
  std::string name;
  FactorCategory category = FactorCategory::site;
  // Ordinal scale; index 0 is the nominal (no overhead) level.
  std::vector<Id> levels;

  std::optional<std::size_t> level_index(std::string_view level) const;

  bool operator==(const FactorDefinition&) const = default;
};

struct Site {
  Id id;
  std::string name;
  double cost_rate = 0.0;  // thousand EUR per person-month
  LevelMap factor_values;

  bool operator==(const Site&) const = default;
};

// Unordered; stored with site_a < site_b.
struct SitePairRelation {
  Id site_a;
  Id site_b;
  LevelMap factor_values;

  bool operator==(const SitePairRelation&) const = default;
};

struct Task {
  Id id;
  std::string name;
  LevelMap factor_values;

  bool operator==(const Task&) const = default;
};

// Symmetric task coupling in [0, 1]; absent pairs weigh 0.
class CouplingMatrix {
 public:
  using Key = std::pair<Id, Id>;

  static Key key(const Id& t, const Id& u);

  // Throws std::invalid_argument for t == u. Range is checked by validation.
  void set(const Id& t, const Id& u, double weight);
  double weight(const Id& t, const Id& u) const;
  const std::map<Key, double>& entries() const { return entries_; }

  bool operator==(const CouplingMatrix&) const = default;

 private:
  std::map<Key, double> entries_;
};

struct FactorAssessment {
  // (task-id, site-id) -> task-site factor levels
  std::map<std::pair<Id, Id>, LevelMap> task_site_values;

  bool operator==(const FactorAssessment&) const = default;
};

enum class Criterion { total_cost, total_effort, cross_site_coupling };

std::string_view to_string(Criterion criterion);
std::optional<Criterion> parse_criterion(std::string_view text);

struct CriterionWeight {
  Criterion criterion = Criterion::total_cost;
  double weight = 1.0;

  bool operator==(const CriterionWeight&) const = default;
};

struct GqmGoal {
  std::string viewpoint;
  std::string context_note;
  std::vector<CriterionWeight> criteria;

  static GqmGoal single(Criterion criterion);

  bool operator==(const GqmGoal&) const = default;
};

struct Assignment {
  std::map<Id, Id> mapping;  // task-id -> site-id

  bool operator==(const Assignment&) const = default;
};

struct NamedAlternative {
  std::string label;
  Assignment assignment;

  bool operator==(const NamedAlternative&) const = default;
};

struct Scenario {
  std::string name;
  // Metadata only, e.g. "captive_offshoring/custom".
  std::string distribution_type;
  std::vector<Site> sites;
  std::vector<SitePairRelation> site_pairs;
  std::vector<Task> tasks;
  CouplingMatrix coupling;
  std::vector<FactorDefinition> catalog;
  ImpactModel impact_model;
  FactorAssessment assessment;
  BaselineSpec baseline;
  GqmGoal goal;
  std::map<Id, Id> pinned;
  std::vector<NamedAlternative> alternatives;

  const Site* find_site(std::string_view id) const;
  const Task* find_task(std::string_view id) const;
  const FactorDefinition* find_factor(std::string_view id) const;
  const SitePairRelation* find_pair(const Id& a, const Id& b) const;
  const NamedAlternative* find_alternative(std::string_view label) const;

  bool operator==(const Scenario&) const = default;
};

// All tasks on one site, pins honored.
Assignment uniform_assignment(const Scenario& scenario, const Id& site);

// Completes `partial` with pinned sites for tasks it leaves out.
Assignment with_pins(const Scenario& scenario, Assignment partial);

// Throws AssignmentError (codes: unassigned_task, unknown_task, unknown_site,
// pin_violated) naming the first offending task in scenario order.
void check_assignment(const Scenario& scenario, const Assignment& assignment);

struct ValidationReport {
  std::vector<Issue> violations;
  std::vector<Issue> warnings;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_scenario(const Scenario& scenario);

// The 11 variation factors, each on {nominal, low, medium, high}.
std::vector<FactorDefinition> builtin_factor_catalog();

// Factor ids of the built-in catalog.
namespace factors {
inline constexpr std::string_view analyst_capability = "analyst_capability";
inline constexpr std::string_view programmer_capability = "programmer_capability";
inline constexpr std::string_view language_tool_experience = "language_tool_experience";
inline constexpr std::string_view personnel_continuity = "personnel_continuity";
inline constexpr std::string_view customer_proximity = "customer_proximity";
inline constexpr std::string_view cultural_difference = "cultural_difference";
inline constexpr std::string_view time_zone_difference = "time_zone_difference";
inline constexpr std::string_view size = "size";
inline constexpr std::string_view coupling = "coupling";
inline constexpr std::string_view application_experience = "application_experience";
inline constexpr std::string_view platform_experience = "platform_experience";
}  // namespace factors

// The GlobalSoft fixture: 4 sites, 7 tasks, 172 PM baseline and the three
// alternatives the project manager compared.
Scenario demo_scenario();

namespace demo {
inline constexpr std::string_view all_europe = "All in Europe";
inline constexpr std::string_view mixed = "Comp 4, Testing: India";
inline constexpr std::string_view all_india = "All in India";
}  // namespace demo

}  // namespace taskalloc
