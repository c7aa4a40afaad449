#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "taskalloc/domain.hpp"

namespace taskalloc {

struct CostSample {
  double effort_pm = 0.0;
  double cost = 0.0;

  bool operator==(const CostSample&) const = default;
};

// Empirical mean of every draw taken from one (factor, level) triangle.
struct FactorDrawStats {
  Id factor;
  Id level;
  std::uint64_t count = 0;
  double mean = 0.0;
  double analytic_mean = 0.0;  // (min + likely + max) / 300
};

struct CostDistribution {
  std::vector<CostSample> samples;  // ordered by iteration index
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<FactorDrawStats> draw_stats;
};

// n sampled evaluations; iteration i draws from substream (seed, i), so
// sample i does not depend on n, thread count or schedule. Runs in parallel;
// monte_carlo_serial is the reference loop and yields identical samples.
CostDistribution monte_carlo(const Scenario& scenario, const Assignment& assignment, std::size_t n,
                             std::uint64_t seed);
CostDistribution monte_carlo_serial(const Scenario& scenario, const Assignment& assignment, std::size_t n,
                                    std::uint64_t seed);

enum class Measure { effort, cost };

// Nearest-rank percentile: the ceil(p * n)-th smallest sample (p = 0 gives
// the minimum). Throws std::domain_error for p outside [0, 1].
double percentile(const CostDistribution& dist, double p, Measure measure);

// Fraction of samples whose cost is strictly above `budget`.
double prob_exceeds(const CostDistribution& dist, double budget);

struct RiskSummary {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double mean_effort_pm = 0.0;
  double mean_cost = 0.0;
  double min_cost = 0.0;
  double max_cost = 0.0;
  double min_effort_pm = 0.0;
  double max_effort_pm = 0.0;
  // (p, effort percentile, cost percentile)
  struct Quantile {
    double p;
    double effort_pm;
    double cost;
  };
  std::vector<Quantile> quantiles;
  std::optional<double> budget;
  std::optional<double> prob_exceeds_budget;
};

RiskSummary summarize(const CostDistribution& dist, const std::vector<double>& percentiles,
                      std::optional<double> budget = std::nullopt);

}  // namespace taskalloc
