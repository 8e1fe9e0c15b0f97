#include <benchmark/benchmark.h>

#include <vector>

#include "pplan/bench.hpp"
#include "pplan/planner.hpp"
#include "pplan/simulator.hpp"

using namespace pplan;

namespace {

std::vector<Scene> scenes(std::size_t n, std::size_t count) {
  BenchConfig cfg;
  std::vector<Scene> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed({n, i}));
    out.push_back(generate_scene(n, cfg, rng));
  }
  return out;
}

void BM_SelectPush(benchmark::State& state) {
  const auto pool = scenes(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const Scene& s = pool[i++ % pool.size()];
    for (ObjectId t = 0; t < s.size(); ++t) {
      if (!blockers_of(s, t).empty()) benchmark::DoNotOptimize(select_push(s, t, {}));
    }
  }
}
BENCHMARK(BM_SelectPush)->Arg(4)->Arg(8)->Arg(16);

void BM_Search(benchmark::State& state) {
  const auto pool = scenes(static_cast<std::size_t>(state.range(0)), 16);
  PlannerConfig cfg;
  cfg.budget = Budget::of_expansions(static_cast<std::size_t>(state.range(1)));
  cfg.push_enabled = true;
  std::size_t i = 0;
  for (auto _ : state) {
    cfg.seed = i;
    benchmark::DoNotOptimize(search(pool[i++ % pool.size()], cfg));
  }
}
BENCHMARK(BM_Search)->Args({4, 500})->Args({8, 500})->Args({8, 5000})->Unit(benchmark::kMillisecond);

void BM_SimulatePush(benchmark::State& state) {
  std::vector<std::pair<Scene, Action>> work;
  for (const Scene& s : scenes(8, 256)) {
    for (ObjectId t = 0; t < s.size(); ++t) {
      if (blockers_of(s, t).empty()) continue;
      if (auto p = select_push(s, t, {})) work.emplace_back(s, p->action());
    }
  }
  if (work.empty()) {
    state.SkipWithError("no admissible pushes");
    return;
  }
  NoiseConfig noise;
  noise.enabled = state.range(0) != 0;
  Rng rng(1);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [s, a] = work[i++ % work.size()];
    benchmark::DoNotOptimize(simulate(s, a, noise, rng));
  }
}
BENCHMARK(BM_SimulatePush)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
