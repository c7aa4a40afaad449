#pragma once

#include <map>
#include <string>

namespace taskalloc {

using Id = std::string;

// COCOMO II.2000 calibration.
inline constexpr double kCocomoA = 2.94;
inline constexpr double kCocomoB = 0.91;
inline constexpr double kNominalScaleFactorSum = 18.97;

enum class BaselineMode { direct, cocomo };

struct BaselineSpec {
  BaselineMode mode = BaselineMode::direct;
  double direct_total_pm = 0.0;
  double size_kloc = 0.0;
  double scale_factor_sum = kNominalScaleFactorSum;
  double nominal_multiplier_product = 1.0;
  double cocomo_a = kCocomoA;
  double cocomo_b = kCocomoB;
  // task-id -> fraction of the total baseline
  std::map<Id, double> shares;

  bool operator==(const BaselineSpec&) const = default;
};

// PM = A * size^(B + 0.01 * sum(SF)) * prod(EM). Throws std::domain_error on
// negative size or scale-factor sum, or a non-positive multiplier product.
double cocomo_effort(double size_kloc, double scale_factor_sum, double multiplier_product,
                     double a = kCocomoA, double b = kCocomoB);

// Total baseline effort described by `spec` (direct value or COCOMO estimate).
double baseline_total(const BaselineSpec& spec);

// Total baseline distributed by share. Throws ValidationError when `spec`
// is inconsistent (shares not summing to one, non-positive shares or total).
std::map<Id, double> baseline_per_task(const BaselineSpec& spec);

}  // namespace taskalloc
