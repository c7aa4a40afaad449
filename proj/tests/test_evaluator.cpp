#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "support/mini.hpp"
#include "taskalloc/evaluator.hpp"
#include "taskalloc/report.hpp"

using namespace taskalloc;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

std::vector<std::size_t> argmin_set(const std::vector<double>& scores, double tol) {
  const double best = *std::min_element(scores.begin(), scores.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] <= best + tol) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("identity case: one nominal site") {
  const auto s = mini::flat(1, 3, 4.5, 90.0);
  const auto r = evaluate(s, uniform_assignment(s, "s0"));
  CHECK(r.total_effort_pm == doctest::Approx(90.0));
  CHECK(r.total_cost == doctest::Approx(90.0 * 4.5));
  CHECK(r.criterion(Criterion::cross_site_coupling) == 0.0);
}

TEST_CASE("demo: three published alternatives keep the published ordering") {
  const auto s = demo_scenario();
  auto eval = [&](std::string_view label) { return evaluate(s, s.find_alternative(label)->assignment); };
  const auto europe = eval(demo::all_europe), mixed = eval(demo::mixed), india = eval(demo::all_india);
  CHECK(europe.total_effort_pm < mixed.total_effort_pm);
  CHECK(mixed.total_effort_pm < india.total_effort_pm);
  CHECK(mixed.total_cost < india.total_cost);
  CHECK(india.total_cost < europe.total_cost);
}

TEST_CASE("cost over effort is the site rate; totals are sums of parts") {
  std::mt19937_64 rng(77);
  const auto demo = demo_scenario();
  for (int i = 0; i < 300; ++i) {
    const auto s = i % 3 == 0 ? demo : gen::random_scenario(rng);
    const auto mode = i % 2 ? EvaluationMode::sampled(i) : EvaluationMode::deterministic();
    const auto r = evaluate(s, gen::random_assignment(rng, s), mode);
    double effort = 0.0, cost = 0.0;
    for (const auto& t : r.per_task) {
      CHECK(rel_close(t.cost / t.effort_pm, s.find_site(t.site)->cost_rate, 1e-9));
      CHECK(rel_close(t.effort_pm, t.baseline_pm * t.site_multiplier * (1.0 + t.collab_overhead), 1e-12));
      effort += t.effort_pm;
      cost += t.cost;
    }
    CHECK(rel_close(r.total_effort_pm, effort, 1e-9));
    CHECK(rel_close(r.total_cost, cost, 1e-9));
  }
}

TEST_CASE("evaluation is pure") {
  const auto s = demo_scenario();
  const auto& a = s.find_alternative(demo::mixed)->assignment;
  CHECK(evaluate(s, a) == evaluate(s, a));
  CHECK(evaluate(s, a, EvaluationMode::sampled(5)) == evaluate(s, a, EvaluationMode::sampled(5)));
  CHECK(evaluate(s, a, EvaluationMode::sampled(5)) != evaluate(s, a, EvaluationMode::sampled(6)));
}

TEST_CASE("factor breakdown adds up to the site multiplier") {
  const auto s = demo_scenario();
  const auto r = evaluate(s, s.find_alternative(demo::all_india)->assignment);
  for (const auto& t : r.per_task) {
    double sum = 0.0;
    for (const auto& [factor, value] : t.factor_breakdown) sum += value;
    CHECK(1.0 + sum == doctest::Approx(t.site_multiplier));
  }
}

TEST_CASE("zero coupling makes effort separable") {
  std::mt19937_64 rng(88);
  for (int i = 0; i < 100; ++i) {
    auto s = gen::random_scenario(rng);
    s.coupling = {};
    const auto assignment = gen::random_assignment(rng, s);
    const auto full = evaluate(s, assignment);
    double separate = 0.0;
    for (const auto& t : s.tasks) {
      separate += baseline_per_task(s.baseline).at(t.id) *
                  site_multiplier(s, t.id, assignment.mapping.at(t.id), EvaluationMode::deterministic(), {});
    }
    CHECK(rel_close(full.total_effort_pm, separate, 1e-9));
  }
}

TEST_CASE("cross-site coupling") {
  auto s = mini::flat(2, 2);
  s.coupling.set("t0", "t1", 0.7);
  CHECK(cross_site_coupling(s, uniform_assignment(s, "s0")) == 0.0);
  CHECK(cross_site_coupling(s, Assignment{{{"t0", "s0"}, {"t1", "s1"}}}) == doctest::Approx(0.7));

  const auto demo = demo_scenario();
  const auto& mixed = demo.find_alternative(demo::mixed)->assignment;
  double oracle = 0.0;
  for (const auto& [key, w] : demo.coupling.entries()) {
    if (mixed.mapping.at(key.first) != mixed.mapping.at(key.second)) oracle += w;
  }
  CHECK(cross_site_coupling(demo, mixed) == doctest::Approx(oracle));
  CHECK(oracle > 0.0);
}

TEST_CASE("weighted score") {
  GqmGoal cost = GqmGoal::single(Criterion::total_cost);
  CHECK(weighted_score(std::vector<std::vector<double>>{{100.0}, {200.0}}, cost) == std::vector<double>{0.0, 1.0});
  CHECK(weighted_score(std::vector<std::vector<double>>{{5.0}, {5.0}}, cost) == std::vector<double>{0.0, 0.0});

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::vector<double>> values(6, std::vector<double>(1));
    for (auto& row : values) row[0] = u(rng);
    const auto scores = weighted_score(values, cost);
    for (std::size_t a = 0; a < values.size(); ++a) {
      for (std::size_t b = 0; b < values.size(); ++b) {
        if (values[a][0] < values[b][0]) CHECK(scores[a] < scores[b]);
      }
    }
  }
}

TEST_CASE("property: argmin of weighted_score survives positive affine rescaling") {
  std::mt19937_64 rng(600);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Criterion all[] = {Criterion::total_cost, Criterion::total_effort, Criterion::cross_site_coupling};
  for (int i = 0; i < 600; ++i) {
    GqmGoal goal;
    const int criteria = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < criteria; ++c) goal.criteria.push_back({all[c], 0.05 + u(rng)});
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::vector<double>> values(n, std::vector<double>(criteria));
    for (auto& row : values) {
      for (auto& v : row) v = u(rng) * 1000.0;
    }
    if (n > 2 && rng() % 4 == 0) values[1] = values[0];  // exact ties
    const auto before = argmin_set(weighted_score(values, goal), 1e-9);
    auto scaled = values;
    const std::size_t c = rng() % criteria;
    const double a = std::exp(u(rng) * 10.0 - 5.0), b = u(rng) * 2000.0 - 1000.0;
    for (auto& row : scaled) row[c] = a * row[c] + b;
    CHECK(argmin_set(weighted_score(scaled, goal), 1e-9) == before);
  }
}

TEST_CASE("compare") {
  const auto s = demo_scenario();
  SUBCASE("singleton") {
    const auto report = compare(s, std::vector<NamedAlternative>{s.alternatives[1]});
    CHECK(report.ranking == std::vector<std::string>{std::string(demo::mixed)});
  }
  SUBCASE("cost goal picks the mixed alternative") {
    const auto report = compare(s, s.alternatives, GqmGoal::single(Criterion::total_cost));
    CHECK(report.winner() == demo::mixed);
    CHECK(report.ranking.size() == 3);
  }
  SUBCASE("effort goal picks all in Europe") {
    const auto report = compare(s, s.alternatives, GqmGoal::single(Criterion::total_effort));
    CHECK(report.winner() == demo::all_europe);
  }
  SUBCASE("ties are broken by label") {
    std::vector<NamedAlternative> twins{{"b", s.alternatives[0].assignment}, {"a", s.alternatives[0].assignment}};
    CHECK(compare(s, twins).ranking == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(compare(s, std::vector<NamedAlternative>{}), Error);
    std::vector<NamedAlternative> dup{s.alternatives[0], s.alternatives[0]};
    CHECK_THROWS_AS(compare(s, dup), Error);
  }
}

TEST_CASE("comparison table layout") {
  const auto s = demo_scenario();
  const auto report = compare(s, s.alternatives);
  const auto table = render_comparison(report);
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t nl; (nl = table.find('\n', start)) != std::string::npos; start = nl + 1) {
    lines.push_back(table.substr(start, nl - start));
  }
  // Header, PM/Cost subheader, rule, three rows.
  REQUIRE(lines.size() > 6);
  for (int row = 3; row < 6; ++row) {
    CHECK(std::count(lines[row].begin(), lines[row].end(), '|') == 8);  // 7 tasks + total
  }
  CHECK(lines[3].rfind(std::string(demo::all_europe), 0) == 0);
  CHECK(table.find("Winner: " + std::string(demo::mixed)) != std::string::npos);

  // Single alternative, single task: one task pair plus the total pair.
  const auto tiny = mini::flat(1, 1);
  const auto one = compare(tiny, std::vector<NamedAlternative>{{"only", uniform_assignment(tiny, "s0")}});
  const auto small = render_comparison(one);
  const auto row = small.substr(small.find("only"));
  CHECK(std::count(row.begin(), row.begin() + static_cast<long>(row.find('\n')), '|') == 2);
}

TEST_CASE("total column rounds the unrounded sum") {
  // Three tasks of 0.4 PM each: cells round to 0, the total 1.2 rounds to 1.
  const auto s = mini::flat(1, 3, 1.0, 1.2);
  const auto report = compare(s, std::vector<NamedAlternative>{{"x", uniform_assignment(s, "s0")}});
  const auto table = render_comparison(report);
  const auto row = table.substr(table.find("x "));
  const auto line = row.substr(0, row.find('\n'));
  const auto total = line.substr(line.rfind('|') + 1);
  CHECK(total.find('1') != std::string::npos);
  const auto first_cell = line.substr(line.find('|') + 1, line.find('|', line.find('|') + 1) - line.find('|') - 1);
  CHECK(first_cell.find('0') != std::string::npos);
}
