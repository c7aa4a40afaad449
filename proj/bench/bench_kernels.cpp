// Serial reference vs OpenMP kernels on the demo scenario.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "taskalloc/optimizer.hpp"
#include "taskalloc/risk.hpp"

using namespace taskalloc;

namespace {

double seconds(const std::function<void()>& body, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const auto scenario = demo_scenario();
  const auto goal = GqmGoal::single(Criterion::total_cost);
  const auto& alt = scenario.find_alternative(demo::mixed)->assignment;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);

  row("brute_force (4^7)", seconds([&] { brute_force_serial(scenario, goal); }, reps),
      seconds([&] { brute_force(scenario, goal); }, reps));

  SearchConfig config;
  config.restarts = 200;
  row("hill_climb (200)", seconds([&] { hill_climb_serial(scenario, config); }, reps),
      seconds([&] { hill_climb(scenario, config); }, reps));

  row("monte_carlo (1e5)", seconds([&] { monte_carlo_serial(scenario, alt, 100000, 7); }, reps),
      seconds([&] { monte_carlo(scenario, alt, 100000, 7); }, reps));
  return 0;
}
