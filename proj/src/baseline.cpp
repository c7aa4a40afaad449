#include "taskalloc/baseline.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "taskalloc/errors.hpp"

namespace taskalloc {

double cocomo_effort(double size_kloc, double scale_factor_sum, double multiplier_product, double a, double b) {
  if (!(size_kloc >= 0.0)) throw std::domain_error("COCOMO size must be >= 0");
  if (!(scale_factor_sum >= 0.0)) throw std::domain_error("COCOMO scale factor sum must be >= 0");
  if (!(multiplier_product > 0.0)) throw std::domain_error("COCOMO multiplier product must be > 0");
  if (size_kloc == 0.0) return 0.0;
  const double exponent = b + 0.01 * scale_factor_sum;
  return a * std::pow(size_kloc, exponent) * multiplier_product;
}

double baseline_total(const BaselineSpec& spec) {
  if (spec.mode == BaselineMode::direct) return spec.direct_total_pm;
  return cocomo_effort(spec.size_kloc, spec.scale_factor_sum, spec.nominal_multiplier_product, spec.cocomo_a,
                       spec.cocomo_b);
}

std::map<Id, double> baseline_per_task(const BaselineSpec& spec) {
  std::vector<Issue> issues;
  double sum = 0.0;
  for (const auto& [task, share] : spec.shares) {
    if (!(share > 0.0)) issues.push_back({"nonpositive_share", "/baseline/shares/" + task, "share must be positive"});
    sum += share;
  }
  if (spec.shares.empty() || !(std::abs(sum - 1.0) <= 1e-9)) {
    issues.push_back({"shares_sum", "/baseline/shares", "shares must sum to 1"});
  }
  const double total = baseline_total(spec);
  if (!(total > 0.0)) issues.push_back({"nonpositive_total", "/baseline", "baseline total must be positive"});
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::map<Id, double> out;
  for (const auto& [task, share] : spec.shares) out[task] = total * (share / sum);
  return out;
}

}  // namespace taskalloc
