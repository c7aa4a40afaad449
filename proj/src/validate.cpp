#include <cmath>
#include <set>

#include "taskalloc/domain.hpp"

namespace taskalloc {

namespace {

class Validator {
 public:
  explicit Validator(const Scenario& s) : s_(s) {}

  ValidationReport run() {
    check_catalog();
    check_sites();
    check_site_pairs();
    check_tasks();
    check_coupling();
    check_impact_model();
    check_assessment();
    check_baseline();
    check_goal();
    check_pins();
    check_alternatives();
    return std::move(report_);
  }

 private:
  void violation(std::string code, std::string path, std::string message) {
    report_.violations.push_back({std::move(code), std::move(path), std::move(message)});
  }
  void warning(std::string code, std::string path, std::string message) {
    report_.warnings.push_back({std::move(code), std::move(path), std::move(message)});
  }

  static std::string idx(std::size_t i) { return std::to_string(i); }

  void check_catalog() {
    std::set<Id> seen;
    for (std::size_t i = 0; i < s_.catalog.size(); ++i) {
      const auto& f = s_.catalog[i];
      const auto path = "/catalog/" + idx(i);
      if (!seen.insert(f.id).second) violation("duplicate_id", path + "/id", "duplicate factor id '" + f.id + "'");
      if (f.levels.empty()) violation("no_levels", path + "/levels", "factor '" + f.id + "' has no levels");
      std::set<Id> levels;
      for (const auto& level : f.levels) {
        if (!levels.insert(level).second) {
          violation("duplicate_level", path + "/levels", "factor '" + f.id + "' repeats level '" + level + "'");
        }
      }
    }
  }

  // Checks that every entry of `values` names a factor of `category` and a
  // level on that factor's scale.
  void check_levels(const LevelMap& values, FactorCategory category, const std::string& path) {
    for (const auto& [factor, level] : values) {
      const auto* def = s_.find_factor(factor);
      const auto fpath = path + "/" + factor;
      if (!def) {
        violation("unknown_factor", fpath, "unknown factor '" + factor + "'");
      } else if (def->category != category) {
        violation("wrong_category", fpath,
                  "factor '" + factor + "' is a " + std::string(to_string(def->category)) + " factor, not " +
                      std::string(to_string(category)));
      } else if (!def->level_index(level)) {
        violation("unknown_level", fpath, "factor '" + factor + "' has no level '" + level + "'");
      }
    }
  }

  // Warns about catalog factors of `category` that `values` leaves unassessed.
  void check_complete(const LevelMap& values, FactorCategory category, const std::string& path,
                      const std::string& entity) {
    for (const auto& f : s_.catalog) {
      if (f.category == category && !values.contains(f.id)) {
        warning("missing_assessment", path + "/" + f.id, "factor '" + f.id + "' not assessed for " + entity);
      }
    }
  }

  void check_sites() {
    if (s_.sites.empty()) violation("empty_sites", "/sites", "scenario has no sites");
    std::set<Id> seen;
    for (std::size_t i = 0; i < s_.sites.size(); ++i) {
      const auto& site = s_.sites[i];
      const auto path = "/sites/" + idx(i);
      if (!seen.insert(site.id).second) violation("duplicate_id", path + "/id", "duplicate site id '" + site.id + "'");
      if (!(site.cost_rate > 0.0) || !std::isfinite(site.cost_rate)) {
        violation("nonpositive_rate", path + "/cost_rate", "site '" + site.id + "' needs a positive cost rate");
      }
      check_levels(site.factor_values, FactorCategory::site, path + "/factors");
      check_complete(site.factor_values, FactorCategory::site, path + "/factors", "site '" + site.id + "'");
    }
  }

  void check_site_pairs() {
    std::set<std::pair<Id, Id>> seen;
    for (std::size_t i = 0; i < s_.site_pairs.size(); ++i) {
      const auto& pair = s_.site_pairs[i];
      const auto path = "/site_pairs/" + idx(i);
      bool refs_ok = true;
      for (const auto* id : {&pair.site_a, &pair.site_b}) {
        if (!s_.find_site(*id)) {
          violation("unknown_site", path, "site pair references unknown site '" + *id + "'");
          refs_ok = false;
        }
      }
      if (pair.site_a == pair.site_b) {
        violation("self_pair", path, "site pair relates '" + pair.site_a + "' to itself");
        continue;
      }
      if (pair.site_a > pair.site_b) {
        violation("noncanonical_pair", path, "site pair must be ordered by id");
      }
      auto key = CouplingMatrix::key(pair.site_a, pair.site_b);
      if (!seen.insert(key).second) {
        violation("duplicate_pair", path, "site pair " + key.first + "/" + key.second + " listed twice");
      }
      check_levels(pair.factor_values, FactorCategory::site_pair, path + "/factors");
      if (refs_ok) {
        check_complete(pair.factor_values, FactorCategory::site_pair, path + "/factors",
                       "site pair " + key.first + "/" + key.second);
      }
    }
    for (std::size_t i = 0; i < s_.sites.size(); ++i) {
      for (std::size_t j = i + 1; j < s_.sites.size(); ++j) {
        if (!s_.find_pair(s_.sites[i].id, s_.sites[j].id)) {
          warning("missing_site_pair", "/site_pairs",
                  "no relation for " + s_.sites[i].id + "/" + s_.sites[j].id + "; nominal levels assumed");
        }
      }
    }
  }

  void check_tasks() {
    if (s_.tasks.empty()) violation("empty_tasks", "/tasks", "scenario has no tasks");
    std::set<Id> seen;
    for (std::size_t i = 0; i < s_.tasks.size(); ++i) {
      const auto& task = s_.tasks[i];
      const auto path = "/tasks/" + idx(i);
      if (!seen.insert(task.id).second) violation("duplicate_id", path + "/id", "duplicate task id '" + task.id + "'");
      check_levels(task.factor_values, FactorCategory::task, path + "/factors");
      check_complete(task.factor_values, FactorCategory::task, path + "/factors", "task '" + task.id + "'");
    }
  }

  void check_coupling() {
    std::size_t i = 0;
    for (const auto& [key, weight] : s_.coupling.entries()) {
      const auto path = "/coupling/" + idx(i++);
      for (const auto* id : {&key.first, &key.second}) {
        if (!s_.find_task(*id)) violation("unknown_task", path, "coupling references unknown task '" + *id + "'");
      }
      if (!(weight >= 0.0 && weight <= 1.0)) {
        violation("coupling_out_of_range", path + "/weight",
                  "coupling " + key.first + "/" + key.second + " must lie in [0, 1]");
      }
    }
  }

  void check_impact_model() {
    const auto& model = s_.impact_model;
    if (!(model.pair_scale >= 0.0) || !std::isfinite(model.pair_scale)) {
      violation("invalid_pair_scale", "/impact_model/pair_scale", "pair_scale must be a non-negative number");
    }
    for (const auto& f : s_.catalog) {
      for (std::size_t l = 0; l < f.levels.size(); ++l) {
        const auto path = "/impact_model/overheads/" + f.id + "/" + f.levels[l];
        const auto* tri = model.find(f.id, f.levels[l]);
        if (!tri) {
          violation("missing_overhead", path, "no overhead for " + f.id + "=" + f.levels[l]);
          continue;
        }
        if (!tri->valid()) {
          violation("invalid_triangle", path, "overhead needs 0 <= min <= likely <= max");
        } else if (l == 0 && tri->max_pct != 0.0) {
          violation("nominal_overhead_nonzero", path, "nominal level must carry zero overhead");
        }
      }
    }
    for (const auto& [key, tri] : model.overheads) {
      const auto* f = s_.find_factor(key.first);
      if (!f || !f->level_index(key.second)) {
        violation("unknown_factor", "/impact_model/overheads/" + key.first + "/" + key.second,
                  "overhead for unknown factor level " + key.first + "=" + key.second);
      }
    }
  }

  void check_assessment() {
    for (const auto& [key, values] : s_.assessment.task_site_values) {
      const auto path = "/assessment/" + key.first + "/" + key.second;
      bool refs_ok = true;
      if (!s_.find_task(key.first)) {
        violation("unknown_task", path, "assessment references unknown task '" + key.first + "'");
        refs_ok = false;
      }
      if (!s_.find_site(key.second)) {
        violation("unknown_site", path, "assessment references unknown site '" + key.second + "'");
        refs_ok = false;
      }
      if (refs_ok) check_levels(values, FactorCategory::task_site, path);
    }
    for (const auto& task : s_.tasks) {
      for (const auto& site : s_.sites) {
        auto it = s_.assessment.task_site_values.find({task.id, site.id});
        static const LevelMap empty;
        check_complete(it == s_.assessment.task_site_values.end() ? empty : it->second, FactorCategory::task_site,
                       "/assessment/" + task.id + "/" + site.id, "task '" + task.id + "' at site '" + site.id + "'");
      }
    }
  }

  void check_baseline() {
    const auto& b = s_.baseline;
    if (b.mode == BaselineMode::direct) {
      if (!(b.direct_total_pm > 0.0) || !std::isfinite(b.direct_total_pm)) {
        violation("nonpositive_total", "/baseline/direct_total_pm", "direct baseline must be positive");
      }
    } else {
      if (!(b.size_kloc > 0.0) || !std::isfinite(b.size_kloc)) {
        violation("nonpositive_size", "/baseline/size_kloc", "COCOMO size must be positive");
      }
      if (!(b.scale_factor_sum >= 0.0)) {
        violation("negative_scale_factors", "/baseline/scale_factor_sum", "scale factor sum must be >= 0");
      }
      if (!(b.nominal_multiplier_product > 0.0)) {
        violation("nonpositive_multiplier", "/baseline/nominal_multiplier_product",
                  "multiplier product must be positive");
      }
    }
    double sum = 0.0;
    for (const auto& [task, share] : b.shares) {
      const auto path = "/baseline/shares/" + task;
      if (!s_.find_task(task)) violation("unknown_task", path, "share for unknown task '" + task + "'");
      if (!(share > 0.0)) violation("nonpositive_share", path, "share of '" + task + "' must be positive");
      sum += share;
    }
    for (const auto& task : s_.tasks) {
      if (!b.shares.contains(task.id)) {
        violation("missing_share", "/baseline/shares/" + task.id, "task '" + task.id + "' has no baseline share");
      }
    }
    if (!b.shares.empty() && !(std::abs(sum - 1.0) <= 1e-9)) {
      violation("shares_sum", "/baseline/shares", "baseline shares sum to " + std::to_string(sum) + ", not 1");
    }
  }

  void check_goal() {
    const auto& goal = s_.goal;
    if (goal.criteria.empty()) {
      violation("empty_criteria", "/goal/criteria", "goal needs at least one criterion");
      return;
    }
    double total = 0.0;
    std::set<Criterion> seen;
    for (std::size_t i = 0; i < goal.criteria.size(); ++i) {
      const auto& c = goal.criteria[i];
      const auto path = "/goal/criteria/" + idx(i);
      if (!seen.insert(c.criterion).second) {
        violation("duplicate_criterion", path, "criterion listed twice");
      }
      if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
        violation("negative_weight", path + "/weight", "criterion weights must be >= 0");
      } else {
        total += c.weight;
      }
    }
    if (!(total > 0.0)) violation("zero_weights", "/goal/criteria", "criterion weights are all zero");
  }

  void check_pins() {
    for (const auto& [task, site] : s_.pinned) {
      const auto path = "/pinned/" + task;
      if (!s_.find_task(task)) violation("unknown_task", path, "pin for unknown task '" + task + "'");
      if (!s_.find_site(site)) violation("unknown_site", path, "task '" + task + "' pinned to unknown site '" + site + "'");
    }
  }

  void check_alternatives() {
    // Pins that are themselves broken are reported once, under /pinned, and
    // not again for every alternative.
    bool broken_pins = false;
    for (const auto& [task, site] : s_.pinned) {
      if (!s_.find_task(task) || !s_.find_site(site)) broken_pins = true;
    }
    Scenario unpinned;
    if (broken_pins) {
      unpinned.sites = s_.sites;
      unpinned.tasks = s_.tasks;
    }
    const Scenario& view = broken_pins ? unpinned : s_;

    std::set<std::string> labels;
    for (std::size_t i = 0; i < s_.alternatives.size(); ++i) {
      const auto& alt = s_.alternatives[i];
      const auto path = "/alternatives/" + idx(i);
      if (!labels.insert(alt.label).second) {
        violation("duplicate_label", path + "/label", "alternative label '" + alt.label + "' repeated");
      }
      try {
        check_assignment(view, alt.assignment);
      } catch (const AssignmentError& e) {
        violation(e.code(), path + "/assignment/" + e.task(), e.what());
      }
    }
  }

  const Scenario& s_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_scenario(const Scenario& scenario) { return Validator(scenario).run(); }

}  // namespace taskalloc
