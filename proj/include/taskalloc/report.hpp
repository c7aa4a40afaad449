#pragma once

#include <string>

#include "taskalloc/domain.hpp"
#include "taskalloc/evaluator.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/risk.hpp"

namespace taskalloc {

// One row per alternative with a "PM | Cost" column pair per task and a
// Total pair, rounded to integers; totals round the unrounded sums. Footer
// lists scores and the winner.
std::string render_comparison(const ComparisonReport& report);

std::string render_evaluation(const Scenario& scenario, const EvaluationResult& result);
std::string render_search(const Scenario& scenario, const SearchResult& result);
std::string render_risk(const RiskSummary& summary);
std::string render_validation(const ValidationReport& report);

// Locale-independent fixed-point formatting.
std::string format_fixed(double value, int decimals);

}  // namespace taskalloc
