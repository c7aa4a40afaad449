#include "taskalloc/scenario_io.hpp"

#include <algorithm>

namespace taskalloc {

namespace {

Json levels_to_json(const LevelMap& levels) {
  Json j = Json::object();
  for (const auto& [factor, level] : levels) j[factor] = level;
  return j;
}

Json baseline_to_json(const BaselineSpec& b) {
  Json j;
  j["mode"] = b.mode == BaselineMode::direct ? "direct" : "cocomo";
  j["direct_total_pm"] = b.direct_total_pm;
  j["size_kloc"] = b.size_kloc;
  j["scale_factor_sum"] = b.scale_factor_sum;
  j["nominal_multiplier_product"] = b.nominal_multiplier_product;
  j["cocomo_a"] = b.cocomo_a;
  j["cocomo_b"] = b.cocomo_b;
  j["shares"] = Json::object();
  for (const auto& [task, share] : b.shares) j["shares"][task] = share;
  return j;
}

// Decoding helpers that turn nlohmann type errors into schema errors with a
// JSON-pointer path.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ParseError("schema_error", (path.empty() ? std::string("/") : path) + ": " + what);
  }

  static const Json& field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing field");
    return *it;
  }

  static const Json* optional(const Json& obj, const char* key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  static std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  static double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }

  static const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  static LevelMap levels(const Json* j, const std::string& path) {
    LevelMap out;
    if (!j) return out;
    if (!j->is_object()) fail(path, "expected an object of factor levels");
    for (const auto& [factor, level] : j->items()) out[factor] = string(level, path + "/" + factor);
    return out;
  }

  static std::string string_or(const Json& obj, const char* key, std::string fallback) {
    const auto* j = optional(obj, key);
    return j ? string(*j, std::string("/") + key) : fallback;
  }
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Json to_json(const Assignment& assignment) {
  Json j = Json::object();
  for (const auto& [task, site] : assignment.mapping) j[task] = site;
  return j;
}

Json to_json(const GqmGoal& goal) {
  Json j;
  j["viewpoint"] = goal.viewpoint;
  j["context_note"] = goal.context_note;
  j["criteria"] = Json::array();
  for (const auto& c : goal.criteria) {
    j["criteria"].push_back({{"criterion", std::string(to_string(c.criterion))}, {"weight", c.weight}});
  }
  return j;
}

Json to_json(const std::vector<FactorDefinition>& catalog) {
  Json j = Json::array();
  for (const auto& f : catalog) {
    j.push_back({{"id", f.id}, {"name", f.name}, {"category", std::string(to_string(f.category))}, {"levels", f.levels}});
  }
  return j;
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["distribution_type"] = s.distribution_type;
  j["catalog"] = to_json(s.catalog);

  j["sites"] = Json::array();
  for (const auto& site : s.sites) {
    j["sites"].push_back({{"id", site.id},
                          {"name", site.name},
                          {"cost_rate", site.cost_rate},
                          {"factors", levels_to_json(site.factor_values)}});
  }
  j["site_pairs"] = Json::array();
  for (const auto& p : s.site_pairs) {
    j["site_pairs"].push_back({{"site_a", p.site_a}, {"site_b", p.site_b}, {"factors", levels_to_json(p.factor_values)}});
  }
  j["tasks"] = Json::array();
  for (const auto& t : s.tasks) {
    j["tasks"].push_back({{"id", t.id}, {"name", t.name}, {"factors", levels_to_json(t.factor_values)}});
  }
  j["coupling"] = Json::array();
  for (const auto& [key, weight] : s.coupling.entries()) {
    j["coupling"].push_back({{"task_a", key.first}, {"task_b", key.second}, {"weight", weight}});
  }

  Json overheads = Json::array();
  for (const auto& [key, tri] : s.impact_model.overheads) {
    overheads.push_back({{"factor", key.first},
                         {"level", key.second},
                         {"min_pct", tri.min_pct},
                         {"likely_pct", tri.likely_pct},
                         {"max_pct", tri.max_pct}});
  }
  j["impact_model"] = {{"pair_scale", s.impact_model.pair_scale}, {"overheads", overheads}};

  j["assessment"] = Json::array();
  for (const auto& [key, levels] : s.assessment.task_site_values) {
    j["assessment"].push_back({{"task", key.first}, {"site", key.second}, {"factors", levels_to_json(levels)}});
  }
  j["baseline"] = baseline_to_json(s.baseline);
  j["goal"] = to_json(s.goal);
  j["pinned"] = Json::object();
  for (const auto& [task, site] : s.pinned) j["pinned"][task] = site;
  j["alternatives"] = Json::array();
  for (const auto& alt : s.alternatives) {
    j["alternatives"].push_back({{"label", alt.label}, {"assignment", to_json(alt.assignment)}});
  }
  return j;
}

std::string serialize_scenario(const Scenario& scenario) { return scenario_to_json(scenario).dump(2) + "\n"; }

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) Reader::fail("/assignment", "expected an object of task -> site");
  Assignment a;
  for (const auto& [task, site] : j.items()) a.mapping[task] = Reader::string(site, "/assignment/" + task);
  return a;
}

GqmGoal goal_from_json(const Json& j) {
  GqmGoal goal;
  goal.viewpoint = Reader::string_or(j, "viewpoint", "");
  goal.context_note = Reader::string_or(j, "context_note", "");
  const auto& criteria = Reader::array(Reader::field(j, "criteria", "/goal"), "/goal/criteria");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto path = "/goal/criteria/" + std::to_string(i);
    const auto name = Reader::string(Reader::field(criteria[i], "criterion", path), path + "/criterion");
    auto criterion = parse_criterion(name);
    if (!criterion) Reader::fail(path + "/criterion", "unknown criterion '" + name + "'");
    const auto* weight = Reader::optional(criteria[i], "weight");
    goal.criteria.push_back({*criterion, weight ? Reader::number(*weight, path + "/weight") : 1.0});
  }
  return goal;
}

Scenario scenario_from_json(const Json& doc) {
  using R = Reader;
  if (!doc.is_object()) R::fail("", "scenario document must be an object");
  const auto& version = R::field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw ParseError("unsupported_version", "unsupported schema_version " + version.dump() + " (supported: " +
                                                std::to_string(kSchemaVersion) + ")");
  }

  Scenario s;
  s.name = R::string_or(doc, "name", "");
  s.distribution_type = R::string_or(doc, "distribution_type", "");

  if (const auto* catalog = R::optional(doc, "catalog")) {
    R::array(*catalog, "/catalog");
    for (std::size_t i = 0; i < catalog->size(); ++i) {
      const auto& f = (*catalog)[i];
      const auto path = "/catalog/" + std::to_string(i);
      FactorDefinition def;
      def.id = R::string(R::field(f, "id", path), path + "/id");
      def.name = R::string_or(f, "name", def.id);
      const auto category = R::string(R::field(f, "category", path), path + "/category");
      auto parsed = parse_factor_category(category);
      if (!parsed) R::fail(path + "/category", "unknown category '" + category + "'");
      def.category = *parsed;
      const auto& levels = R::array(R::field(f, "levels", path), path + "/levels");
      for (std::size_t l = 0; l < levels.size(); ++l) {
        def.levels.push_back(R::string(levels[l], path + "/levels/" + std::to_string(l)));
      }
      s.catalog.push_back(std::move(def));
    }
  } else {
    s.catalog = builtin_factor_catalog();
  }

  const auto& sites = R::array(R::field(doc, "sites", ""), "/sites");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto path = "/sites/" + std::to_string(i);
    Site site;
    site.id = R::string(R::field(sites[i], "id", path), path + "/id");
    site.name = R::string_or(sites[i], "name", site.id);
    site.cost_rate = R::number(R::field(sites[i], "cost_rate", path), path + "/cost_rate");
    site.factor_values = R::levels(R::optional(sites[i], "factors"), path + "/factors");
    s.sites.push_back(std::move(site));
  }

  if (const auto* pairs = R::optional(doc, "site_pairs")) {
    R::array(*pairs, "/site_pairs");
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const auto path = "/site_pairs/" + std::to_string(i);
      SitePairRelation p;
      p.site_a = R::string(R::field((*pairs)[i], "site_a", path), path + "/site_a");
      p.site_b = R::string(R::field((*pairs)[i], "site_b", path), path + "/site_b");
      if (p.site_b < p.site_a) std::swap(p.site_a, p.site_b);
      p.factor_values = R::levels(R::optional((*pairs)[i], "factors"), path + "/factors");
      s.site_pairs.push_back(std::move(p));
    }
  }

  const auto& tasks = R::array(R::field(doc, "tasks", ""), "/tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto path = "/tasks/" + std::to_string(i);
    Task task;
    task.id = R::string(R::field(tasks[i], "id", path), path + "/id");
    task.name = R::string_or(tasks[i], "name", task.id);
    task.factor_values = R::levels(R::optional(tasks[i], "factors"), path + "/factors");
    s.tasks.push_back(std::move(task));
  }

  if (const auto* coupling = R::optional(doc, "coupling")) {
    R::array(*coupling, "/coupling");
    for (std::size_t i = 0; i < coupling->size(); ++i) {
      const auto path = "/coupling/" + std::to_string(i);
      const auto& e = (*coupling)[i];
      const auto a = R::string(R::field(e, "task_a", path), path + "/task_a");
      const auto b = R::string(R::field(e, "task_b", path), path + "/task_b");
      if (a == b) R::fail(path, "task '" + a + "' coupled with itself");
      if (s.coupling.entries().contains(CouplingMatrix::key(a, b))) R::fail(path, "coupling pair listed twice");
      s.coupling.set(a, b, R::number(R::field(e, "weight", path), path + "/weight"));
    }
  }

  const auto& model = R::field(doc, "impact_model", "");
  if (const auto* scale = R::optional(model, "pair_scale")) {
    s.impact_model.pair_scale = R::number(*scale, "/impact_model/pair_scale");
  }
  const auto& overheads = R::array(R::field(model, "overheads", "/impact_model"), "/impact_model/overheads");
  for (std::size_t i = 0; i < overheads.size(); ++i) {
    const auto path = "/impact_model/overheads/" + std::to_string(i);
    const auto& o = overheads[i];
    TriangularOverhead tri{R::number(R::field(o, "min_pct", path), path + "/min_pct"),
                           R::number(R::field(o, "likely_pct", path), path + "/likely_pct"),
                           R::number(R::field(o, "max_pct", path), path + "/max_pct")};
    auto key = std::make_pair(R::string(R::field(o, "factor", path), path + "/factor"),
                              R::string(R::field(o, "level", path), path + "/level"));
    if (!s.impact_model.overheads.emplace(key, tri).second) R::fail(path, "overhead listed twice");
  }

  if (const auto* assessment = R::optional(doc, "assessment")) {
    R::array(*assessment, "/assessment");
    for (std::size_t i = 0; i < assessment->size(); ++i) {
      const auto path = "/assessment/" + std::to_string(i);
      const auto& e = (*assessment)[i];
      auto key = std::make_pair(R::string(R::field(e, "task", path), path + "/task"),
                                R::string(R::field(e, "site", path), path + "/site"));
      auto levels = R::levels(R::optional(e, "factors"), path + "/factors");
      if (!s.assessment.task_site_values.emplace(key, std::move(levels)).second) {
        R::fail(path, "assessment for " + key.first + "/" + key.second + " listed twice");
      }
    }
  }

  const auto& baseline = R::field(doc, "baseline", "");
  const auto mode = R::string(R::field(baseline, "mode", "/baseline"), "/baseline/mode");
  if (mode == "direct") {
    s.baseline.mode = BaselineMode::direct;
  } else if (mode == "cocomo") {
    s.baseline.mode = BaselineMode::cocomo;
  } else {
    R::fail("/baseline/mode", "expected 'direct' or 'cocomo'");
  }
  auto number_or = [&](const char* key, double fallback) {
    const auto* j = R::optional(baseline, key);
    return j ? R::number(*j, std::string("/baseline/") + key) : fallback;
  };
  s.baseline.direct_total_pm = number_or("direct_total_pm", 0.0);
  s.baseline.size_kloc = number_or("size_kloc", 0.0);
  s.baseline.scale_factor_sum = number_or("scale_factor_sum", kNominalScaleFactorSum);
  s.baseline.nominal_multiplier_product = number_or("nominal_multiplier_product", 1.0);
  s.baseline.cocomo_a = number_or("cocomo_a", kCocomoA);
  s.baseline.cocomo_b = number_or("cocomo_b", kCocomoB);
  const auto& shares = R::field(baseline, "shares", "/baseline");
  if (!shares.is_object()) R::fail("/baseline/shares", "expected an object of task -> share");
  for (const auto& [task, share] : shares.items()) {
    s.baseline.shares[task] = R::number(share, "/baseline/shares/" + task);
  }

  s.goal = goal_from_json(R::field(doc, "goal", ""));

  if (const auto* pinned = R::optional(doc, "pinned")) {
    if (!pinned->is_object()) R::fail("/pinned", "expected an object of task -> site");
    for (const auto& [task, site] : pinned->items()) s.pinned[task] = R::string(site, "/pinned/" + task);
  }
  if (const auto* alts = R::optional(doc, "alternatives")) {
    R::array(*alts, "/alternatives");
    for (std::size_t i = 0; i < alts->size(); ++i) {
      const auto path = "/alternatives/" + std::to_string(i);
      NamedAlternative alt;
      alt.label = R::string(R::field((*alts)[i], "label", path), path + "/label");
      alt.assignment = assignment_from_json(R::field((*alts)[i], "assignment", path));
      s.alternatives.push_back(std::move(alt));
    }
  }
  return s;
}

Scenario read_scenario_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("syntax_error",
                     "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
  return scenario_from_json(doc);
}

Scenario parse_scenario(std::string_view text) {
  Scenario s = read_scenario_document(text);
  auto report = validate_scenario(s);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
  return s;
}

Json to_json(const std::vector<Issue>& issues) {
  Json j = Json::array();
  for (const auto& i : issues) j.push_back({{"code", i.code}, {"path", i.path}, {"message", i.message}});
  return j;
}

Json to_json(const ValidationReport& report) {
  return {{"valid", report.ok()}, {"violations", to_json(report.violations)}, {"warnings", to_json(report.warnings)}};
}

Json to_json(const EvaluationResult& result) {
  Json per_task = Json::array();
  for (const auto& r : result.per_task) {
    Json breakdown = Json::object();
    for (const auto& [factor, value] : r.factor_breakdown) breakdown[factor] = value;
    per_task.push_back({{"task", r.task},
                        {"site", r.site},
                        {"effort_pm", r.effort_pm},
                        {"cost", r.cost},
                        {"baseline_pm", r.baseline_pm},
                        {"site_multiplier", r.site_multiplier},
                        {"collab_overhead", r.collab_overhead},
                        {"factor_breakdown", breakdown}});
  }
  Json criteria = Json::object();
  for (const auto& [c, value] : result.criteria_values) criteria[std::string(to_string(c))] = value;
  return {{"per_task", per_task},
          {"total_effort_pm", result.total_effort_pm},
          {"total_cost", result.total_cost},
          {"criteria_values", criteria}};
}

Json to_json(const ComparisonReport& report) {
  Json alternatives = Json::array();
  for (const auto& alt : report.alternatives) {
    alternatives.push_back(
        {{"label", alt.label}, {"assignment", to_json(alt.assignment)}, {"result", to_json(alt.result)}});
  }
  Json scores = Json::object();
  for (const auto& [label, score] : report.scores) scores[label] = score;
  return {{"alternatives", alternatives},
          {"scores", scores},
          {"ranking", report.ranking},
          {"winner", report.winner()},
          {"goal", to_json(report.goal)}};
}

Json to_json(const SearchResult& result) {
  Json restarts = Json::array();
  for (const auto& r : result.restarts) {
    restarts.push_back({{"steps", r.trajectory.empty() ? 0 : r.trajectory.size() - 1},
                        {"final_score", r.trajectory.empty() ? 0.0 : r.trajectory.back()},
                        {"converged", r.converged}});
  }
  return {{"best", to_json(result.best)},
          {"best_result", to_json(result.best_result)},
          {"best_score", result.best_score},
          {"evaluations", result.evaluations},
          {"exhaustive", result.exhaustive},
          {"restarts", restarts}};
}

Json to_json(const RiskSummary& summary) {
  Json quantiles = Json::array();
  for (const auto& q : summary.quantiles) {
    quantiles.push_back({{"p", q.p}, {"effort_pm", q.effort_pm}, {"cost", q.cost}});
  }
  Json j{{"n", summary.n},
         {"seed", summary.seed},
         {"mean_effort_pm", summary.mean_effort_pm},
         {"mean_cost", summary.mean_cost},
         {"min_effort_pm", summary.min_effort_pm},
         {"max_effort_pm", summary.max_effort_pm},
         {"min_cost", summary.min_cost},
         {"max_cost", summary.max_cost},
         {"percentiles", quantiles}};
  if (summary.budget) {
    j["budget"] = *summary.budget;
    j["prob_exceeds"] = *summary.prob_exceeds_budget;
  }
  return j;
}

}  // namespace taskalloc
