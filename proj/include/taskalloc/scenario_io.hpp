#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "taskalloc/domain.hpp"
#include "taskalloc/evaluator.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/risk.hpp"

namespace taskalloc {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json scenario_to_json(const Scenario& scenario);
std::string serialize_scenario(const Scenario& scenario);

// Structural decode only. Throws ParseError (codes: syntax_error,
// unsupported_version, schema_error) with line/column for syntax errors.
// Comments (// and /* */) are accepted and dropped.
Scenario read_scenario_document(std::string_view text);
Scenario scenario_from_json(const Json& doc);

// read_scenario_document + validate_scenario; violations throw
// ValidationError carrying every issue with its path.
Scenario parse_scenario(std::string_view text);

Assignment assignment_from_json(const Json& j);
Json to_json(const Assignment& assignment);
GqmGoal goal_from_json(const Json& j);
Json to_json(const GqmGoal& goal);

Json to_json(const std::vector<FactorDefinition>& catalog);
Json to_json(const ValidationReport& report);
Json to_json(const std::vector<Issue>& issues);
Json to_json(const EvaluationResult& result);
Json to_json(const ComparisonReport& report);
Json to_json(const SearchResult& result);
Json to_json(const RiskSummary& summary);

}  // namespace taskalloc
