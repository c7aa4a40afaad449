#include <array>

#include "taskalloc/domain.hpp"

namespace taskalloc {

namespace {

// Effort of the all-Europe alternative per task (PM). Used only as relative
// task sizes; the column adds up to 511.
constexpr std::array<std::pair<std::string_view, double>, 7> kEuropeEffort{{
    {"comp1", 75},
    {"comp2", 40},
    {"comp3", 55},
    {"comp4", 176},
    {"comp5", 43},
    {"system_test", 84},
    {"integration", 38},
}};

struct LevelTriangles {
  std::string_view factor;
  TriangularOverhead low, medium, high;
};

// Overhead triangles (percent) per level. Each level dominates the one below.
constexpr std::array<LevelTriangles, 11> kTriangles{{
    {factors::analyst_capability, {2, 5, 10}, {8, 15, 25}, {15, 30, 50}},
    {factors::programmer_capability, {2, 5, 10}, {8, 15, 25}, {15, 30, 50}},
    {factors::language_tool_experience, {1, 3, 6}, {4, 8, 15}, {8, 15, 25}},
    {factors::personnel_continuity, {2, 5, 10}, {5, 12, 20}, {10, 20, 35}},
    {factors::customer_proximity, {2, 4, 8}, {5, 10, 18}, {10, 18, 30}},
    {factors::cultural_difference, {3, 5, 10}, {8, 15, 25}, {15, 25, 40}},
    {factors::time_zone_difference, {1, 3, 6}, {5, 10, 18}, {10, 20, 30}},
    {factors::size, {5, 10, 15}, {10, 20, 30}, {20, 35, 50}},
    {factors::coupling, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
    {factors::application_experience, {5, 10, 20}, {15, 30, 50}, {60, 95, 130}},
    {factors::platform_experience, {3, 8, 15}, {10, 20, 35}, {30, 55, 80}},
}};

LevelMap site_levels(std::string_view analyst, std::string_view programmer, std::string_view lang_tool,
                     std::string_view continuity, std::string_view proximity) {
  return {
      {Id(factors::analyst_capability), Id(analyst)},
      {Id(factors::programmer_capability), Id(programmer)},
      {Id(factors::language_tool_experience), Id(lang_tool)},
      {Id(factors::personnel_continuity), Id(continuity)},
      {Id(factors::customer_proximity), Id(proximity)},
  };
}

LevelMap pair_levels(std::string_view cultural, std::string_view time_zone) {
  return {{Id(factors::cultural_difference), Id(cultural)}, {Id(factors::time_zone_difference), Id(time_zone)}};
}

LevelMap experience(std::string_view application, std::string_view platform) {
  return {{Id(factors::application_experience), Id(application)},
          {Id(factors::platform_experience), Id(platform)}};
}

Assignment assign(std::initializer_list<std::pair<const char*, const char*>> entries) {
  Assignment a;
  for (const auto& [task, site] : entries) a.mapping[task] = site;
  return a;
}

}  // namespace

Scenario demo_scenario() {
  Scenario s;
  s.name = "GlobalSoft / BigIndustries";
  s.distribution_type = "captive_offshoring/custom_software";
  s.catalog = builtin_factor_catalog();

  // Rates are the cost/effort ratios of the published comparison table.
  s.sites = {
      {"frankfurt", "Frankfurt", 6.0, site_levels("nominal", "nominal", "nominal", "nominal", "low")},
      {"cologne", "Cologne", 6.0, site_levels("nominal", "nominal", "nominal", "nominal", "low")},
      {"london", "London", 7.45, site_levels("nominal", "nominal", "nominal", "nominal", "nominal")},
      {"bangalore", "Bangalore", 3.0, site_levels("low", "low", "low", "medium", "high")},
  };
  s.site_pairs = {
      {"bangalore", "cologne", pair_levels("high", "medium")},
      {"bangalore", "frankfurt", pair_levels("high", "medium")},
      {"bangalore", "london", pair_levels("high", "medium")},
      {"cologne", "frankfurt", pair_levels("nominal", "nominal")},
      {"cologne", "london", pair_levels("low", "low")},
      {"frankfurt", "london", pair_levels("low", "low")},
  };

  auto size = [](std::string_view level) { return LevelMap{{Id(factors::size), Id(level)}}; };
  s.tasks = {
      {"comp1", "Comp 1", size("nominal")},
      {"comp2", "Comp 2", size("nominal")},
      {"comp3", "Comp 3", size("nominal")},
      {"comp4", "Comp 4", size("low")},
      {"comp5", "Comp 5", size("nominal")},
      {"system_test", "System Test", size("nominal")},
      {"integration", "Integration", size("nominal")},
  };

  s.coupling.set("comp1", "comp2", 0.5);
  s.coupling.set("comp2", "comp3", 0.4);
  s.coupling.set("comp1", "comp3", 0.3);
  s.coupling.set("comp3", "comp4", 0.2);
  s.coupling.set("comp4", "comp5", 0.6);
  s.coupling.set("comp1", "comp4", 0.1);
  for (const char* comp : {"comp1", "comp2", "comp3", "comp5"}) s.coupling.set("system_test", comp, 0.2);
  s.coupling.set("system_test", "comp4", 0.3);
  s.coupling.set("system_test", "integration", 0.5);
  for (const char* comp : {"comp1", "comp2", "comp3", "comp4", "comp5"}) s.coupling.set("integration", comp, 0.3);

  for (const auto& entry : kTriangles) {
    const Id factor(entry.factor);
    s.impact_model.overheads[{factor, "nominal"}] = {0, 0, 0};
    s.impact_model.overheads[{factor, "low"}] = entry.low;
    s.impact_model.overheads[{factor, "medium"}] = entry.medium;
    s.impact_model.overheads[{factor, "high"}] = entry.high;
  }
  s.impact_model.pair_scale = 0.5;

  // Europe built the customer's previous systems; Bangalore is new to the
  // domain except for the technology behind Comp 4.
  for (const auto& task : s.tasks) {
    for (const char* site : {"frankfurt", "cologne", "london"}) {
      s.assessment.task_site_values[{task.id, site}] = experience("nominal", "nominal");
    }
  }
  auto& bangalore = s.assessment.task_site_values;
  bangalore[{"comp1", "bangalore"}] = experience("high", "medium");
  bangalore[{"comp2", "bangalore"}] = experience("high", "high");
  bangalore[{"comp3", "bangalore"}] = experience("high", "high");
  bangalore[{"comp4", "bangalore"}] = experience("nominal", "nominal");
  bangalore[{"comp5", "bangalore"}] = experience("high", "high");
  bangalore[{"system_test", "bangalore"}] = experience("medium", "low");
  bangalore[{"integration", "bangalore"}] = experience("high", "high");

  s.baseline.mode = BaselineMode::direct;
  s.baseline.direct_total_pm = 172.0;
  double column_total = 0.0;
  for (const auto& [task, pm] : kEuropeEffort) column_total += pm;
  for (const auto& [task, pm] : kEuropeEffort) s.baseline.shares[Id(task)] = pm / column_total;

  s.goal.viewpoint = "Project manager (Frankfurt), responsible for earlier BigIndustries projects";
  s.goal.context_note =
      "Custom software for BigIndustries (London); requirements and architecture done in London and "
      "Frankfurt; Bangalore newly available";
  s.goal.criteria = {{Criterion::total_cost, 1.0}};

  s.alternatives = {
      {Id(demo::all_europe),
       assign({{"comp1", "frankfurt"}, {"comp2", "frankfurt"}, {"comp3", "cologne"}, {"comp4", "cologne"},
               {"comp5", "cologne"}, {"system_test", "london"}, {"integration", "london"}})},
      {Id(demo::mixed),
       assign({{"comp1", "frankfurt"}, {"comp2", "frankfurt"}, {"comp3", "cologne"}, {"comp4", "bangalore"},
               {"comp5", "cologne"}, {"system_test", "bangalore"}, {"integration", "london"}})},
      {Id(demo::all_india),
       assign({{"comp1", "bangalore"}, {"comp2", "bangalore"}, {"comp3", "bangalore"}, {"comp4", "bangalore"},
               {"comp5", "bangalore"}, {"system_test", "bangalore"}, {"integration", "bangalore"}})},
  };
  return s;
}

}  // namespace taskalloc
