#include "taskalloc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace taskalloc {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) return "nan";
  std::string out(buf, end);
  if (out == "-0" || out.find_first_not_of("-0.") == std::string::npos) {
    if (out.front() == '-') out.erase(0, 1);
  }
  return out;
}

namespace {

std::string rounded(double value) { return format_fixed(std::round(value), 0); }

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string task_name(const Scenario& scenario, const Id& id) {
  const auto* t = scenario.find_task(id);
  return t ? t->name : id;
}

std::string site_name(const Scenario& scenario, const Id& id) {
  const auto* s = scenario.find_site(id);
  return s ? s->name : id;
}

std::string goal_text(const GqmGoal& goal) {
  std::string out;
  for (const auto& c : goal.criteria) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(c.criterion)) + "=" + format_fixed(c.weight, 2);
  }
  return out;
}

}  // namespace

std::string render_comparison(const ComparisonReport& report) {
  // Column groups: one per task plus Total.
  std::vector<std::string> groups;
  for (const auto& [id, name] : report.tasks) groups.push_back(name);
  groups.push_back("Total");

  std::vector<std::vector<std::pair<std::string, std::string>>> cells;
  for (const auto& alt : report.alternatives) {
    std::vector<std::pair<std::string, std::string>> row;
    for (const auto& r : alt.result.per_task) row.emplace_back(rounded(r.effort_pm), rounded(r.cost));
    row.emplace_back(rounded(alt.result.total_effort_pm), rounded(alt.result.total_cost));
    cells.push_back(std::move(row));
  }

  std::size_t label_width = std::string("Alternative").size();
  for (const auto& alt : report.alternatives) label_width = std::max(label_width, alt.label.size());

  std::vector<std::size_t> pm_width(groups.size(), 2);
  std::vector<std::size_t> cost_width(groups.size(), 4);
  for (const auto& row : cells) {
    for (std::size_t g = 0; g < row.size(); ++g) {
      pm_width[g] = std::max(pm_width[g], row[g].first.size());
      cost_width[g] = std::max(cost_width[g], row[g].second.size());
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::size_t need = groups[g].size();
    const std::size_t have = pm_width[g] + 1 + cost_width[g];
    if (need > have) cost_width[g] += need - have;
  }

  std::ostringstream out;
  out << pad_right("", label_width);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out << " | " << pad_right(groups[g], pm_width[g] + 1 + cost_width[g]);
  }
  out << "\n" << pad_right("Alternative", label_width);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out << " | " << pad_left("PM", pm_width[g]) << ' ' << pad_left("Cost", cost_width[g]);
  }
  out << "\n";
  std::size_t line = label_width;
  for (std::size_t g = 0; g < groups.size(); ++g) line += 3 + pm_width[g] + 1 + cost_width[g];
  out << std::string(line, '-') << "\n";
  for (std::size_t a = 0; a < report.alternatives.size(); ++a) {
    out << pad_right(report.alternatives[a].label, label_width);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      out << " | " << pad_left(cells[a][g].first, pm_width[g]) << ' ' << pad_left(cells[a][g].second, cost_width[g]);
    }
    out << "\n";
  }
  out << "\nEffort in person-months, cost in thousand EUR.\n";
  out << "Scores (" << goal_text(report.goal) << "; lower is better):\n";
  for (const auto& label : report.ranking) {
    out << "  " << pad_right(label, label_width) << "  " << format_fixed(report.scores.at(label), 4) << "\n";
  }
  out << "Winner: " << report.winner() << "\n";
  return out.str();
}

std::string render_evaluation(const Scenario& scenario, const EvaluationResult& result) {
  std::size_t name_width = 4;
  std::size_t site_width = 4;
  for (const auto& r : result.per_task) {
    name_width = std::max(name_width, task_name(scenario, r.task).size());
    site_width = std::max(site_width, site_name(scenario, r.site).size());
  }
  std::ostringstream out;
  out << pad_right("Task", name_width) << "  " << pad_right("Site", site_width)
      << "  Baseline  SiteMult  Collab     PM    Cost\n";
  for (const auto& r : result.per_task) {
    out << pad_right(task_name(scenario, r.task), name_width) << "  " << pad_right(site_name(scenario, r.site), site_width)
        << "  " << pad_left(format_fixed(r.baseline_pm, 1), 8) << "  " << pad_left(format_fixed(r.site_multiplier, 3), 8)
        << "  " << pad_left(format_fixed(r.collab_overhead, 3), 6) << "  " << pad_left(format_fixed(r.effort_pm, 1), 5)
        << "  " << pad_left(format_fixed(r.cost, 1), 6) << "\n";
  }
  out << "Total effort: " << format_fixed(result.total_effort_pm, 2) << " PM\n";
  out << "Total cost:   " << format_fixed(result.total_cost, 2) << " kEUR\n";
  out << "Cross-site coupling: " << format_fixed(result.criterion(Criterion::cross_site_coupling), 3) << "\n";
  return out.str();
}

std::string render_search(const Scenario& scenario, const SearchResult& result) {
  std::ostringstream out;
  out << (result.exhaustive ? "Exhaustive search" : "Hill climbing") << ": " << result.evaluations
      << " evaluations";
  if (!result.exhaustive) out << ", " << result.restarts.size() << " restarts";
  out << "\nBest score: " << format_fixed(result.best_score, 6) << "\n";
  out << "Best assignment:\n";
  for (const auto& task : scenario.tasks) {
    out << "  " << task.name << " -> " << site_name(scenario, result.best.mapping.at(task.id)) << "\n";
  }
  out << render_evaluation(scenario, result.best_result);
  return out.str();
}

std::string render_risk(const RiskSummary& s) {
  std::ostringstream out;
  out << "Monte Carlo: n=" << s.n << " seed=" << s.seed << "\n";
  out << "Effort PM: mean " << format_fixed(s.mean_effort_pm, 2) << "  min " << format_fixed(s.min_effort_pm, 2)
      << "  max " << format_fixed(s.max_effort_pm, 2) << "\n";
  out << "Cost kEUR: mean " << format_fixed(s.mean_cost, 2) << "  min " << format_fixed(s.min_cost, 2) << "  max "
      << format_fixed(s.max_cost, 2) << "\n";
  for (const auto& q : s.quantiles) {
    out << "P" << format_fixed(q.p * 100.0, 1) << ": effort " << format_fixed(q.effort_pm, 2) << " PM, cost "
        << format_fixed(q.cost, 2) << " kEUR\n";
  }
  if (s.budget) {
    out << "P(cost > " << format_fixed(*s.budget, 2) << ") = " << format_fixed(*s.prob_exceeds_budget, 4) << "\n";
  }
  return out.str();
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& v : report.violations) out << "error   " << v.code << "  " << v.path << "  " << v.message << "\n";
  for (const auto& w : report.warnings) out << "warning " << w.code << "  " << w.path << "  " << w.message << "\n";
  out << (report.ok() ? "valid" : "invalid") << " (" << report.violations.size() << " violations, "
      << report.warnings.size() << " warnings)\n";
  return out.str();
}

}  // namespace taskalloc
