// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "support/generators.hpp"
#include "taskalloc/evaluator.hpp"
#include "taskalloc/impact.hpp"
#include "taskalloc/optimizer.hpp"
#include "taskalloc/risk.hpp"
#include "taskalloc/scenario_io.hpp"

using namespace taskalloc;

namespace tol {
constexpr double kOrderingSeconds = 0.1;
constexpr double kRateRelative = 0.005;
constexpr double kBaselineRelative = 1e-9;
constexpr double kBruteForceSeconds = 1.0;
constexpr double kScoreRelative = 1e-12;
constexpr double kCocomoRelative = 0.001;
constexpr double kDrawMeanRelative = 0.01;
constexpr double kMonteCarloSeconds = 10.0;
constexpr double kArgminAbsolute = 1e-9;
constexpr int kRandomTriples = 1000;
constexpr int kGenerated = 500;
constexpr std::size_t kSamples = 100000;
}  // namespace tol

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void run(int number, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s;%s\n", out.pass ? "PASS" : "FAIL", number, title, out.detail.str().c_str());
  std::fflush(stdout);
}

const Assignment& alt(const Scenario& s, std::string_view label) { return s.find_alternative(label)->assignment; }

}  // namespace

int main() {
  run(1, "published effort and cost ordering of the three alternatives", [](Outcome& o) {
    const auto start = Clock::now();
    const auto s = demo_scenario();
    const auto europe = evaluate(s, alt(s, demo::all_europe));
    const auto mixed = evaluate(s, alt(s, demo::mixed));
    const auto india = evaluate(s, alt(s, demo::all_india));
    const double seconds = since(start);
    o.detail << " effort " << europe.total_effort_pm << " < " << mixed.total_effort_pm << " < "
             << india.total_effort_pm << " PM; cost " << mixed.total_cost << " < " << india.total_cost << " < "
             << europe.total_cost << " kEUR; " << seconds << " s";
    o.require(europe.total_effort_pm < mixed.total_effort_pm && mixed.total_effort_pm < india.total_effort_pm,
              "effort ordering");
    o.require(mixed.total_cost < india.total_cost && india.total_cost < europe.total_cost, "cost ordering");
    o.require(seconds < tol::kOrderingSeconds, "runtime");
  });

  run(2, "cost / effort equals the site rate for every task", [](Outcome& o) {
    const auto s = demo_scenario();
    double worst = 0.0;
    int cells = 0;
    for (const auto& a : s.alternatives) {
      for (const auto& t : evaluate(s, a.assignment).per_task) {
        const double rate = s.find_site(t.site)->cost_rate;
        worst = std::max(worst, std::abs(t.cost / t.effort_pm - rate) / rate);
        ++cells;
      }
    }
    o.detail << " " << cells << " cells, worst relative deviation " << worst;
    o.require(worst <= tol::kRateRelative, "rate identity");
  });

  run(3, "decision reproduction under cost and effort weights", [](Outcome& o) {
    const auto s = demo_scenario();
    const auto by_cost = compare(s, s.alternatives, GqmGoal::single(Criterion::total_cost));
    const auto by_effort = compare(s, s.alternatives, GqmGoal::single(Criterion::total_effort));
    o.detail << " cost winner \"" << by_cost.winner() << "\", effort winner \"" << by_effort.winner() << "\"";
    o.require(by_cost.winner() == demo::mixed, "cost winner");
    o.require(by_effort.winner() == demo::all_europe, "effort winner");
  });

  run(4, "baseline conservation at 172 PM", [](Outcome& o) {
    double sum = 0.0;
    for (const auto& [task, pm] : baseline_per_task(demo_scenario().baseline)) sum += pm;
    o.detail << " sum " << sum << " PM";
    o.require(rel_close(sum, 172.0, tol::kBaselineRelative), "sum");
  });

  run(5, "hill climbing reaches the exhaustive optimum", [](Outcome& o) {
    const auto s = demo_scenario();
    const auto start = Clock::now();
    const auto exact = brute_force(s, s.goal);
    const double seconds = since(start);
    o.detail << " brute force " << exact.evaluations << " assignments in " << seconds << " s, best "
             << exact.best_score << ";";
    o.require(exact.evaluations == 16384, "space size");
    o.require(seconds < tol::kBruteForceSeconds, "brute force runtime");
    int hits = 0;
    for (std::uint64_t seed = 42; seed < 52; ++seed) {
      SearchConfig config;
      config.restarts = 20;
      config.seed = seed;
      config.objective = s.goal;
      const auto r = hill_climb(s, config);
      const bool hit = rel_close(r.best_score, exact.best_score, tol::kScoreRelative);
      hits += hit;
      if (seed == 42) o.require(hit, "seed 42");
    }
    o.detail << " hill climb hits " << hits << "/10 seeds";
    o.require(hits == 10, "all seeds");
  });

  run(6, "COCOMO value and monotonicity", [](Outcome& o) {
    const double oracle = 2.94 * std::pow(100.0, 1.0997);
    const double value = cocomo_effort(100.0, 18.97, 1.0);
    o.detail << " cocomo(100, 18.97, 1) = " << value << " vs " << oracle << ";";
    o.require(rel_close(value, oracle, tol::kCocomoRelative), "value");
    std::mt19937_64 rng(2000);
    std::uniform_real_distribution<double> size(1.0, 2000.0), sf(0.0, 40.0), em(0.1, 5.0), step(1e-6, 3.0);
    int violations = 0;
    for (int i = 0; i < tol::kRandomTriples; ++i) {
      const double s = size(rng), f = sf(rng), m = em(rng), d = step(rng);
      const double base = cocomo_effort(s, f, m);
      violations += !(cocomo_effort(s + d, f, m) > base);
      violations += !(cocomo_effort(s, f + d, m) > base);
      violations += !(cocomo_effort(s, f, m + d) > base);
    }
    o.detail << " " << tol::kRandomTriples << " triples, " << violations << " violations";
    o.require(violations == 0, "monotonicity");
  });

  run(7, "Monte Carlo calibration and reproducibility", [](Outcome& o) {
    const auto start = Clock::now();
    const auto s = demo_scenario();
    // Mixed exercises the cross-site pair factors, all-India the experience factors at high.
    std::map<std::pair<Id, Id>, std::pair<double, std::uint64_t>> sums;
    std::map<std::pair<Id, Id>, double> analytic;
    for (auto label : {demo::mixed, demo::all_india}) {
      for (const auto& st : monte_carlo(s, alt(s, label), tol::kSamples, 20240601).draw_stats) {
        auto& [sum, count] = sums[{st.factor, st.level}];
        sum += st.mean * static_cast<double>(st.count);
        count += st.count;
        analytic[{st.factor, st.level}] = st.analytic_mean;
      }
    }
    double worst = 0.0;
    std::set<Id> factors_seen;
    for (const auto& [key, acc] : sums) {
      const double expected = analytic[key];
      if (expected == 0.0) continue;
      factors_seen.insert(key.first);
      worst = std::max(worst, std::abs(acc.first / static_cast<double>(acc.second) - expected) / expected);
    }
    o.detail << " " << sums.size() << " factor levels over " << factors_seen.size()
             << " factors, worst mean deviation " << worst << ";";
    o.require(worst <= tol::kDrawMeanRelative, "draw means");

    auto point = s;
    for (auto& [key, tri] : point.impact_model.overheads) tri = {tri.likely_pct, tri.likely_pct, tri.likely_pct};
    const auto det = evaluate(point, alt(point, demo::mixed));
    bool bitwise = true;
    for (const auto& x : monte_carlo(point, alt(point, demo::mixed), tol::kSamples, 5).samples) {
      bitwise = bitwise && x.effort_pm == det.total_effort_pm && x.cost == det.total_cost;
    }
    o.require(bitwise, "degenerate equals deterministic");

    const auto a = monte_carlo(s, alt(s, demo::mixed), tol::kSamples, 77);
    const auto b = monte_carlo(s, alt(s, demo::mixed), tol::kSamples, 77);
    o.require(a.samples == b.samples, "same seed");
    const auto doubled = monte_carlo(s, alt(s, demo::mixed), 2 * tol::kSamples, 77);
    o.require(std::equal(a.samples.begin(), a.samples.end(), doubled.samples.begin()), "prefix");
    const double seconds = since(start);
    o.detail << " degenerate bitwise " << (bitwise ? "yes" : "no") << ", " << seconds << " s";
    o.require(seconds < tol::kMonteCarloSeconds, "runtime");
  });

  run(8, "property suites", [](Outcome& o) {
    std::mt19937_64 rng(8008);
    const auto det = EvaluationMode::deterministic();

    int mono_bad = 0, mono_n = 0;
    while (mono_n < tol::kGenerated) {
      const auto before = gen::random_scenario(rng, {.min_sites = 2});
      auto after = before;
      if (!gen::worsen_one(rng, after)) continue;
      const auto a = gen::random_assignment(rng, before);
      mono_bad += evaluate(after, a).total_effort_pm < evaluate(before, a).total_effort_pm;
      ++mono_n;
    }

    int coloc_bad = 0, coloc_n = 0;
    while (coloc_n < tol::kGenerated) {
      const auto s = gen::random_scenario(rng, {.min_sites = 2, .min_tasks = 2, .pins = false});
      auto a = gen::random_assignment(rng, s);
      const auto& t = s.tasks[rng() % s.tasks.size()].id;
      const auto& u = s.tasks[rng() % s.tasks.size()].id;
      if (t == u || s.coupling.weight(t, u) == 0.0) continue;
      const double before = collaboration_overhead(s, t, a, det, {});
      a.mapping[u] = a.mapping[t];
      coloc_bad += collaboration_overhead(s, t, a, det, {}) > before;
      ++coloc_n;
    }

    int trip_bad = 0;
    for (int i = 0; i < tol::kGenerated; ++i) {
      const auto s = gen::random_scenario(rng);
      trip_bad += !(read_scenario_document(serialize_scenario(s)) == s);
    }

    int affine_bad = 0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const Criterion all[] = {Criterion::total_cost, Criterion::total_effort, Criterion::cross_site_coupling};
    for (int i = 0; i < tol::kGenerated; ++i) {
      GqmGoal goal;
      const int k = 1 + static_cast<int>(rng() % 3);
      for (int c = 0; c < k; ++c) goal.criteria.push_back({all[c], 0.05 + u01(rng)});
      std::vector<std::vector<double>> values(1 + rng() % 10, std::vector<double>(k));
      for (auto& row : values) {
        for (auto& v : row) v = 1000.0 * u01(rng);
      }
      auto argmin = [&](const std::vector<double>& sc) {
        const double best = *std::min_element(sc.begin(), sc.end());
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < sc.size(); ++j) {
          if (sc[j] <= best + tol::kArgminAbsolute) out.push_back(j);
        }
        return out;
      };
      const auto before = argmin(weighted_score(values, goal));
      const std::size_t c = rng() % k;
      const double scale = std::exp(10.0 * u01(rng) - 5.0), shift = 2000.0 * u01(rng) - 1000.0;
      for (auto& row : values) row[c] = scale * row[c] + shift;
      affine_bad += argmin(weighted_score(values, goal)) != before;
    }

    o.detail << " monotonicity " << mono_bad << "/" << mono_n << ", co-location " << coloc_bad << "/" << coloc_n
             << ", round trip " << trip_bad << "/" << tol::kGenerated << ", affine argmin " << affine_bad << "/"
             << tol::kGenerated << " failures";
    o.require(mono_bad == 0, "monotonicity");
    o.require(coloc_bad == 0, "co-location");
    o.require(trip_bad == 0, "round trip");
    o.require(affine_bad == 0, "affine argmin");
  });

  return failures == 0 ? 0 : 1;
}
