#include "taskalloc/impact.hpp"

#include <algorithm>

namespace taskalloc {

DrawRecorder::DrawRecorder(std::size_t factors, std::size_t max_levels)
    : stride_(max_levels), sums_(factors * max_levels, 0.0), counts_(factors * max_levels, 0) {}

void DrawRecorder::record(std::size_t factor, std::size_t level, double value) {
  sums_[factor * stride_ + level] += value;
  ++counts_[factor * stride_ + level];
}

void DrawRecorder::merge(const DrawRecorder& other) {
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    sums_[i] += other.sums_[i];
    counts_[i] += other.counts_[i];
  }
}

double OverheadResolver::resolve(const ScenarioIndex& index, std::size_t factor, std::size_t level,
                                 std::size_t entity_a, std::size_t entity_b) const {
  const auto& tri = index.triangle(factor, level);
  if (!mode_.is_sampled()) return resolve_overhead(tri, mode_, 0.0);
  const std::uint64_t slot = (static_cast<std::uint64_t>(factor) << 40) |
                             (static_cast<std::uint64_t>(entity_a) << 20) | static_cast<std::uint64_t>(entity_b);
  const double value = resolve_overhead(tri, mode_, draws_.uniform(slot));
  if (recorder_) recorder_->record(factor, level, value);
  return value;
}

namespace {

[[noreturn]] void missing(const ScenarioIndex& index, std::size_t factor, const std::string& entity) {
  throw EvaluationError("factor '" + index.scenario().catalog[factor].id + "' is not assessed for " + entity);
}

}  // namespace

double cell_multiplier(const ScenarioIndex& index, std::size_t task, std::size_t site,
                       const OverheadResolver& resolver, std::span<double> contributions) {
  const auto& s = index.scenario();
  double total = 0.0;
  auto add = [&](std::size_t factor, double value) {
    total += value;
    if (!contributions.empty()) contributions[factor] += value;
  };

  const auto site_f = index.factors_of(FactorCategory::site);
  for (std::size_t k = 0; k < site_f.size(); ++k) {
    const auto level = index.site_level(site, k);
    if (level == ScenarioIndex::kMissing) missing(index, site_f[k], "site '" + s.sites[site].id + "'");
    add(site_f[k], resolver.resolve(index, site_f[k], level, site, 0));
  }
  const auto task_f = index.factors_of(FactorCategory::task);
  for (std::size_t k = 0; k < task_f.size(); ++k) {
    const auto level = index.task_level(task, k);
    if (level == ScenarioIndex::kMissing) missing(index, task_f[k], "task '" + s.tasks[task].id + "'");
    add(task_f[k], resolver.resolve(index, task_f[k], level, task, 0));
  }
  const auto ts_f = index.factors_of(FactorCategory::task_site);
  for (std::size_t k = 0; k < ts_f.size(); ++k) {
    const auto level = index.task_site_level(task, site, k);
    if (level == ScenarioIndex::kMissing) {
      missing(index, ts_f[k], "task '" + s.tasks[task].id + "' at site '" + s.sites[site].id + "'");
    }
    add(ts_f[k], resolver.resolve(index, ts_f[k], level, task, site));
  }
  return 1.0 + total;
}

double pair_overhead(const ScenarioIndex& index, std::size_t a, std::size_t b, const OverheadResolver& resolver,
                     std::span<double> contributions) {
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  double total = 0.0;
  const auto pair_f = index.factors_of(FactorCategory::site_pair);
  for (std::size_t k = 0; k < pair_f.size(); ++k) {
    const auto level = index.pair_level(lo, hi, k);
    if (level == ScenarioIndex::kMissing) {
      const auto& s = index.scenario();
      missing(index, pair_f[k], "site pair '" + s.sites[lo].id + "'/'" + s.sites[hi].id + "'");
    }
    const double value = resolver.resolve(index, pair_f[k], level, lo, hi);
    total += value;
    if (!contributions.empty()) contributions[pair_f[k]] += value;
  }
  return total;
}

OverheadTable::OverheadTable(const ScenarioIndex& index, const OverheadResolver& resolver, bool with_breakdown)
    : sites_(index.site_count()),
      factors_(index.factor_count()),
      with_breakdown_(with_breakdown),
      multiplier_(index.task_count() * sites_, 0.0),
      pair_(sites_ * sites_, 0.0),
      cell_error_(index.task_count() * sites_),
      pair_error_(sites_ * sites_) {
  if (with_breakdown_) {
    cell_breakdown_.assign(multiplier_.size() * factors_, 0.0);
    pair_breakdown_.assign(pair_.size() * factors_, 0.0);
  }
  for (std::size_t t = 0; t < index.task_count(); ++t) {
    for (std::size_t s = 0; s < sites_; ++s) fill_cell(index, resolver, t, s);
  }
  for (std::size_t a = 0; a < sites_; ++a) {
    for (std::size_t b = a + 1; b < sites_; ++b) fill_pair(index, resolver, a, b);
  }
}

OverheadTable::OverheadTable(const ScenarioIndex& index, const OverheadResolver& resolver,
                             std::span<const std::size_t> sites, bool with_breakdown)
    : sites_(index.site_count()),
      factors_(index.factor_count()),
      with_breakdown_(with_breakdown),
      multiplier_(index.task_count() * sites_, 0.0),
      pair_(sites_ * sites_, 0.0),
      cell_error_(index.task_count() * sites_, "cell not computed"),
      pair_error_(sites_ * sites_, "pair not computed") {
  if (with_breakdown_) {
    cell_breakdown_.assign(multiplier_.size() * factors_, 0.0);
    pair_breakdown_.assign(pair_.size() * factors_, 0.0);
  }
  std::vector<bool> used(sites_, false);
  for (std::size_t t = 0; t < sites.size(); ++t) {
    fill_cell(index, resolver, t, sites[t]);
    used[sites[t]] = true;
  }
  for (std::size_t a = 0; a < sites_; ++a) {
    for (std::size_t b = a + 1; b < sites_; ++b) {
      if (used[a] && used[b]) fill_pair(index, resolver, a, b);
    }
  }
}

void OverheadTable::fill_cell(const ScenarioIndex& index, const OverheadResolver& resolver, std::size_t t,
                              std::size_t s) {
  const std::size_t cell = t * sites_ + s;
  std::span<double> contributions;
  if (with_breakdown_) contributions = std::span<double>(cell_breakdown_).subspan(cell * factors_, factors_);
  try {
    multiplier_[cell] = cell_multiplier(index, t, s, resolver, contributions);
    cell_error_[cell].clear();
  } catch (const EvaluationError& e) {
    cell_error_[cell] = e.what();
  }
}

void OverheadTable::fill_pair(const ScenarioIndex& index, const OverheadResolver& resolver, std::size_t a,
                              std::size_t b) {
  std::span<double> contributions;
  if (with_breakdown_) contributions = std::span<double>(pair_breakdown_).subspan((a * sites_ + b) * factors_, factors_);
  try {
    const double value = pair_overhead(index, a, b, resolver, contributions);
    pair_[a * sites_ + b] = value;
    pair_[b * sites_ + a] = value;
    pair_error_[a * sites_ + b].clear();
    pair_error_[b * sites_ + a].clear();
  } catch (const EvaluationError& e) {
    pair_error_[a * sites_ + b] = e.what();
    pair_error_[b * sites_ + a] = e.what();
  }
  if (with_breakdown_) {
    std::copy_n(pair_breakdown_.begin() + static_cast<std::ptrdiff_t>((a * sites_ + b) * factors_), factors_,
                pair_breakdown_.begin() + static_cast<std::ptrdiff_t>((b * sites_ + a) * factors_));
  }
}

double OverheadTable::multiplier(std::size_t task, std::size_t site) const {
  const std::size_t cell = task * sites_ + site;
  if (!cell_error_[cell].empty()) throw EvaluationError(cell_error_[cell]);
  return multiplier_[cell];
}

double OverheadTable::pair(std::size_t a, std::size_t b) const {
  if (a == b) return 0.0;
  const std::size_t cell = a * sites_ + b;
  if (!pair_error_[cell].empty()) throw EvaluationError(pair_error_[cell]);
  return pair_[cell];
}

std::span<const double> OverheadTable::cell_breakdown(std::size_t task, std::size_t site) const {
  return std::span<const double>(cell_breakdown_).subspan((task * sites_ + site) * factors_, factors_);
}

std::span<const double> OverheadTable::pair_breakdown(std::size_t a, std::size_t b) const {
  return std::span<const double>(pair_breakdown_).subspan((a * sites_ + b) * factors_, factors_);
}

namespace {

std::size_t require_task(const ScenarioIndex& index, const Id& task) {
  auto t = index.task_index(task);
  if (!t) throw AssignmentError("unknown_task", task, "unknown task '" + task + "'");
  return *t;
}

}  // namespace

double site_multiplier(const Scenario& scenario, const Id& task, const Id& site, const EvaluationMode& mode,
                       const DrawStream& draws) {
  const ScenarioIndex index(scenario);
  const auto t = require_task(index, task);
  auto s = index.site_index(site);
  if (!s) throw AssignmentError("unknown_site", task, "unknown site '" + site + "'");
  return cell_multiplier(index, t, *s, OverheadResolver(mode, draws));
}

double collaboration_overhead(const Scenario& scenario, const Id& task, const Assignment& assignment,
                              const EvaluationMode& mode, const DrawStream& draws) {
  const ScenarioIndex index(scenario);
  const auto t = require_task(index, task);
  const auto sites = index.to_indices(assignment);
  const OverheadResolver resolver(mode, draws);
  double total = 0.0;
  for (std::size_t u = 0; u < index.task_count(); ++u) {
    if (u == t || sites[u] == sites[t]) continue;
    const double w = index.coupling(t, u);
    if (w <= 0.0) continue;
    total += w * index.pair_scale() * pair_overhead(index, sites[t], sites[u], resolver);
  }
  return total;
}

}  // namespace taskalloc
