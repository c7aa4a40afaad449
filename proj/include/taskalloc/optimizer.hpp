#pragma once

#include <cstdint>
#include <vector>

#include "taskalloc/domain.hpp"
#include "taskalloc/evaluator.hpp"
#include "taskalloc/scenario_index.hpp"

namespace taskalloc {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct SearchConfig {
  int restarts = 20;
  std::uint64_t seed = 42;
  // Cap on descent steps per restart.
  int max_no_improve = 1000;
  GqmGoal objective = GqmGoal::single(Criterion::total_cost);
};

struct RestartSummary {
  std::vector<double> trajectory;  // score after every accepted move, start first
  bool converged = false;          // stopped at a local optimum, not at the cap
};

struct SearchResult {
  Assignment best;
  EvaluationResult best_result;
  double best_score = 0.0;
  std::uint64_t evaluations = 0;
  bool exhaustive = false;
  std::vector<RestartSummary> restarts;
};

// Assignment-independent scalarization used during search: the weighted sum
// of each criterion divided by a fixed reference value. References are the
// baseline effort, the baseline effort priced at the mean site rate, and the
// total coupling weight (1 when there is none).
class SearchObjective {
 public:
  SearchObjective(const ScenarioIndex& index, const GqmGoal& goal);

  double score(const Totals& totals) const;
  double reference(Criterion c) const;

 private:
  GqmGoal goal_;
  double effort_ref_;
  double cost_ref_;
  double coupling_ref_;
};

// Number of pin-consistent assignments, saturating at UINT64_MAX.
std::uint64_t assignment_space_size(const ScenarioIndex& index);

// Exhaustive argmin over all pin-consistent assignments. Enumeration is
// lexicographic (first task most significant, sites in scenario order) and
// the first minimum found wins. Throws RefusalError("enumeration_cap") when
// the space exceeds `cap`. Runs in parallel; brute_force_serial is the
// single-threaded reference and returns the same result.
SearchResult brute_force(const Scenario& scenario, const GqmGoal& objective,
                         std::uint64_t cap = kDefaultEnumerationCap);
SearchResult brute_force_serial(const Scenario& scenario, const GqmGoal& objective,
                                std::uint64_t cap = kDefaultEnumerationCap);

// Steepest descent over single-task reassignments from random starts.
// Restarts run in parallel with per-restart seeds; the best is chosen by
// (score, restart index), so results do not depend on the thread count.
SearchResult hill_climb(const Scenario& scenario, const SearchConfig& config);
SearchResult hill_climb_serial(const Scenario& scenario, const SearchConfig& config);

}  // namespace taskalloc
