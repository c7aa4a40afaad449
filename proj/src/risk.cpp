#include "taskalloc/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "taskalloc/evaluator.hpp"
#include "taskalloc/impact.hpp"
#include "taskalloc/scenario_index.hpp"

namespace taskalloc {

namespace {

// Draw statistics are reduced per fixed-size chunk, then merged in chunk
// order, so the sums are the same for any thread count.
constexpr std::size_t kChunk = 2048;

CostSample sample(const ScenarioIndex& index, std::span<const std::size_t> sites, std::uint64_t seed,
                  std::size_t iteration, DrawRecorder* recorder) {
  const OverheadResolver resolver(EvaluationMode::sampled(seed), DrawStream(seed, iteration), recorder);
  const OverheadTable table(index, resolver, sites);
  const Totals totals = evaluate_totals(index, sites, table);
  return {totals.effort_pm, totals.cost};
}

std::vector<FactorDrawStats> collect_stats(const ScenarioIndex& index, const DrawRecorder& recorder) {
  std::vector<FactorDrawStats> out;
  const auto& catalog = index.scenario().catalog;
  for (std::size_t f = 0; f < catalog.size(); ++f) {
    for (std::size_t l = 0; l < catalog[f].levels.size(); ++l) {
      const auto count = recorder.count(f, l);
      if (count == 0) continue;
      out.push_back({catalog[f].id, catalog[f].levels[l], count, recorder.sum(f, l) / static_cast<double>(count),
                     index.triangle(f, l).mean_fraction()});
    }
  }
  return out;
}

void check_n(std::size_t n) {
  if (n < 1) throw std::invalid_argument("monte_carlo needs n >= 1");
}

}  // namespace

CostDistribution monte_carlo_serial(const Scenario& scenario, const Assignment& assignment, std::size_t n,
                                    std::uint64_t seed) {
  check_n(n);
  const ScenarioIndex index(scenario);
  const auto sites = index.to_indices(assignment);
  DrawRecorder recorder(index.factor_count(), index.max_levels());

  CostDistribution dist;
  dist.n = n;
  dist.seed = seed;
  dist.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dist.samples.push_back(sample(index, sites, seed, i, &recorder));
  dist.draw_stats = collect_stats(index, recorder);
  return dist;
}

CostDistribution monte_carlo(const Scenario& scenario, const Assignment& assignment, std::size_t n,
                             std::uint64_t seed) {
  check_n(n);
  const ScenarioIndex index(scenario);
  const auto sites = index.to_indices(assignment);

  CostDistribution dist;
  dist.n = n;
  dist.seed = seed;
  dist.samples.resize(n);

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<DrawRecorder> recorders(chunks, DrawRecorder(index.factor_count(), index.max_levels()));
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const auto chunk = static_cast<std::size_t>(c);
    try {
      for (std::size_t i = chunk * kChunk; i < std::min(n, (chunk + 1) * kChunk); ++i) {
        dist.samples[i] = sample(index, sites, seed, i, &recorders[chunk]);
      }
    } catch (const std::exception& e) {
#pragma omp critical(taskalloc_monte_carlo)
      failure = e.what();
    }
  }
  if (!failure.empty()) throw EvaluationError(failure);

  DrawRecorder total(index.factor_count(), index.max_levels());
  for (const auto& r : recorders) total.merge(r);
  dist.draw_stats = collect_stats(index, total);
  return dist;
}

double percentile(const CostDistribution& dist, double p, Measure measure) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("percentile p must lie in [0, 1]");
  if (dist.samples.empty()) throw std::domain_error("percentile of an empty distribution");
  std::vector<double> values;
  values.reserve(dist.samples.size());
  for (const auto& s : dist.samples) values.push_back(measure == Measure::cost ? s.cost : s.effort_pm);
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

double prob_exceeds(const CostDistribution& dist, double budget) {
  if (dist.samples.empty()) return 0.0;
  const auto over = std::count_if(dist.samples.begin(), dist.samples.end(),
                                  [&](const CostSample& s) { return s.cost > budget; });
  return static_cast<double>(over) / static_cast<double>(dist.samples.size());
}

RiskSummary summarize(const CostDistribution& dist, const std::vector<double>& percentiles,
                      std::optional<double> budget) {
  RiskSummary out;
  out.n = dist.samples.size();
  out.seed = dist.seed;
  if (dist.samples.empty()) return out;
  out.min_cost = out.max_cost = dist.samples.front().cost;
  out.min_effort_pm = out.max_effort_pm = dist.samples.front().effort_pm;
  for (const auto& s : dist.samples) {
    out.mean_cost += s.cost;
    out.mean_effort_pm += s.effort_pm;
    out.min_cost = std::min(out.min_cost, s.cost);
    out.max_cost = std::max(out.max_cost, s.cost);
    out.min_effort_pm = std::min(out.min_effort_pm, s.effort_pm);
    out.max_effort_pm = std::max(out.max_effort_pm, s.effort_pm);
  }
  out.mean_cost /= static_cast<double>(out.n);
  out.mean_effort_pm /= static_cast<double>(out.n);
  for (double p : percentiles) {
    out.quantiles.push_back({p, percentile(dist, p, Measure::effort), percentile(dist, p, Measure::cost)});
  }
  if (budget) {
    out.budget = budget;
    out.prob_exceeds_budget = prob_exceeds(dist, *budget);
  }
  return out;
}

}  // namespace taskalloc
