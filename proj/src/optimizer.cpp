#include "taskalloc/optimizer.hpp"

#include <omp.h>

#include <limits>
#include <random>
#include <stdexcept>

namespace taskalloc {

SearchObjective::SearchObjective(const ScenarioIndex& index, const GqmGoal& goal) : goal_(goal) {
  double rate_sum = 0.0;
  for (std::size_t s = 0; s < index.site_count(); ++s) rate_sum += index.cost_rate(s);
  effort_ref_ = index.baseline_total();
  cost_ref_ = effort_ref_ * rate_sum / static_cast<double>(index.site_count());
  double coupling_sum = 0.0;
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    for (std::size_t u = t + 1; u < index.task_count(); ++u) coupling_sum += index.coupling(t, u);
  }
  coupling_ref_ = coupling_sum > 0.0 ? coupling_sum : 1.0;
}

double SearchObjective::reference(Criterion c) const {
  switch (c) {
    case Criterion::total_cost: return cost_ref_;
    case Criterion::total_effort: return effort_ref_;
    case Criterion::cross_site_coupling: return coupling_ref_;
  }
  return cost_ref_;
}

double SearchObjective::score(const Totals& totals) const {
  double score = 0.0;
  for (const auto& c : goal_.criteria) score += c.weight * totals.criterion(c.criterion) / reference(c.criterion);
  return score;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

struct Space {
  std::vector<std::size_t> free_tasks;  // unpinned, scenario order
  std::vector<std::size_t> fixed;       // start vector with pins applied
  std::uint64_t size = 1;
};

Space make_space(const ScenarioIndex& index) {
  Space space;
  space.fixed.assign(index.task_count(), 0);
  const std::uint64_t radix = index.site_count();
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    if (auto pin = index.pinned_site(t)) {
      space.fixed[t] = *pin;
      continue;
    }
    space.free_tasks.push_back(t);
    if (space.size != kSaturated) {
      space.size = space.size > kSaturated / radix ? kSaturated : space.size * radix;
    }
  }
  return space;
}

// k-th assignment in lexicographic order; the first free task is the most
// significant digit.
void decode(const Space& space, std::size_t radix, std::uint64_t k, std::vector<std::size_t>& sites) {
  for (auto it = space.free_tasks.rbegin(); it != space.free_tasks.rend(); ++it) {
    sites[*it] = static_cast<std::size_t>(k % radix);
    k /= radix;
  }
}

struct Candidate {
  double score = std::numeric_limits<double>::infinity();
  std::uint64_t k = 0;

  bool better_than(const Candidate& other) const {
    return score < other.score || (score == other.score && k < other.k);
  }
};

SearchResult finish(const ScenarioIndex& index, const std::vector<std::size_t>& sites, double score) {
  SearchResult result;
  result.best = index.to_assignment(sites);
  result.best_result = evaluate(index, sites);
  result.best_score = score;
  return result;
}

std::uint64_t checked_space(const Space& space, std::uint64_t cap) {
  if (space.size > cap) {
    throw RefusalError("enumeration_cap", "assignment space of " +
                                              (space.size == kSaturated ? std::string("more than 2^64")
                                                                        : std::to_string(space.size)) +
                                              " exceeds the enumeration cap of " + std::to_string(cap) +
                                              "; use hill_climb instead");
  }
  return space.size;
}

}  // namespace

std::uint64_t assignment_space_size(const ScenarioIndex& index) { return make_space(index).size; }

SearchResult brute_force_serial(const Scenario& scenario, const GqmGoal& goal, std::uint64_t cap) {
  const ScenarioIndex index(scenario);
  const SearchObjective objective(index, goal);
  const Space space = make_space(index);
  const std::uint64_t n = checked_space(space, cap);
  const OverheadTable table(index, OverheadResolver(EvaluationMode::deterministic(), {}));

  Candidate best;
  std::vector<std::size_t> sites = space.fixed;
  for (std::uint64_t k = 0; k < n; ++k) {
    decode(space, index.site_count(), k, sites);
    const Candidate c{objective.score(evaluate_totals(index, sites, table)), k};
    if (c.better_than(best)) best = c;
  }
  decode(space, index.site_count(), best.k, sites);
  auto result = finish(index, sites, best.score);
  result.evaluations = n;
  result.exhaustive = true;
  return result;
}

SearchResult brute_force(const Scenario& scenario, const GqmGoal& goal, std::uint64_t cap) {
  const ScenarioIndex index(scenario);
  const SearchObjective objective(index, goal);
  const Space space = make_space(index);
  const std::uint64_t n = checked_space(space, cap);
  const OverheadTable table(index, OverheadResolver(EvaluationMode::deterministic(), {}));

  Candidate best;
  std::string failure;
#pragma omp parallel
  {
    Candidate local;
    std::vector<std::size_t> sites = space.fixed;
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
      decode(space, index.site_count(), static_cast<std::uint64_t>(k), sites);
      try {
        const Candidate c{objective.score(evaluate_totals(index, sites, table)), static_cast<std::uint64_t>(k)};
        if (c.better_than(local)) local = c;
      } catch (const std::exception& e) {
#pragma omp critical(taskalloc_brute_force)
        failure = e.what();
      }
    }
#pragma omp critical(taskalloc_brute_force)
    if (local.better_than(best)) best = local;
  }
  if (!failure.empty()) throw EvaluationError(failure);

  std::vector<std::size_t> sites = space.fixed;
  decode(space, index.site_count(), best.k, sites);
  auto result = finish(index, sites, best.score);
  result.evaluations = n;
  result.exhaustive = true;
  return result;
}

namespace {

struct ClimbOutcome {
  std::vector<std::size_t> sites;
  double score = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  RestartSummary summary;
};

ClimbOutcome climb(const ScenarioIndex& index, const OverheadTable& table, const SearchObjective& objective,
                   const Space& space, const SearchConfig& config, int restart) {
  ClimbOutcome out;
  std::mt19937_64 rng(mix64(config.seed ^ mix64(static_cast<std::uint64_t>(restart))));
  out.sites = space.fixed;
  for (auto t : space.free_tasks) out.sites[t] = static_cast<std::size_t>(rng() % index.site_count());

  out.score = objective.score(evaluate_totals(index, out.sites, table));
  ++out.evaluations;
  out.summary.trajectory.push_back(out.score);

  std::vector<std::size_t> trial = out.sites;
  for (int step = 0; step < config.max_no_improve; ++step) {
    double best_score = out.score;
    std::size_t best_task = 0;
    std::size_t best_site = 0;
    bool improved = false;
    for (auto t : space.free_tasks) {
      const std::size_t current = out.sites[t];
      for (std::size_t s = 0; s < index.site_count(); ++s) {
        if (s == current) continue;
        trial[t] = s;
        const double score = objective.score(evaluate_totals(index, trial, table));
        ++out.evaluations;
        if (score < best_score) {
          best_score = score;
          best_task = t;
          best_site = s;
          improved = true;
        }
      }
      trial[t] = current;
    }
    if (!improved) {
      out.summary.converged = true;
      return out;
    }
    out.sites[best_task] = best_site;
    trial[best_task] = best_site;
    out.score = best_score;
    out.summary.trajectory.push_back(out.score);
  }
  return out;
}

SearchResult merge_restarts(const ScenarioIndex& index, std::vector<ClimbOutcome>& outcomes) {
  std::size_t best = 0;
  std::uint64_t evaluations = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    evaluations += outcomes[r].evaluations;
    if (outcomes[r].score < outcomes[best].score) best = r;
  }
  auto result = finish(index, outcomes[best].sites, outcomes[best].score);
  result.evaluations = evaluations;
  result.exhaustive = false;
  for (auto& o : outcomes) result.restarts.push_back(std::move(o.summary));
  return result;
}

void check_config(const SearchConfig& config) {
  if (config.restarts < 1) throw std::invalid_argument("hill_climb needs restarts >= 1");
  if (config.max_no_improve < 1) throw std::invalid_argument("hill_climb needs max_no_improve >= 1");
}

}  // namespace

SearchResult hill_climb_serial(const Scenario& scenario, const SearchConfig& config) {
  check_config(config);
  const ScenarioIndex index(scenario);
  const SearchObjective objective(index, config.objective);
  const Space space = make_space(index);
  const OverheadTable table(index, OverheadResolver(EvaluationMode::deterministic(), {}));

  std::vector<ClimbOutcome> outcomes;
  for (int r = 0; r < config.restarts; ++r) outcomes.push_back(climb(index, table, objective, space, config, r));
  return merge_restarts(index, outcomes);
}

SearchResult hill_climb(const Scenario& scenario, const SearchConfig& config) {
  check_config(config);
  const ScenarioIndex index(scenario);
  const SearchObjective objective(index, config.objective);
  const Space space = make_space(index);
  const OverheadTable table(index, OverheadResolver(EvaluationMode::deterministic(), {}));

  std::vector<ClimbOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < config.restarts; ++r) {
    try {
      outcomes[static_cast<std::size_t>(r)] = climb(index, table, objective, space, config, r);
    } catch (const std::exception& e) {
#pragma omp critical(taskalloc_hill_climb)
      failure = e.what();
    }
  }
  if (!failure.empty()) throw EvaluationError(failure);
  return merge_restarts(index, outcomes);
}

}  // namespace taskalloc
