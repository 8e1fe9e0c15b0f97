#pragma once

// Randomized scene generation and the experimental protocol: several scenes
// per object count, several seeded runs per scene, per-scene averaging first
// and aggregation across scenes second.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pplan/executor.hpp"
#include "pplan/planner.hpp"
#include "pplan/scene.hpp"
#include "pplan/simulator.hpp"

namespace pplan {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Variant {
  std::string name;
  PlannerConfig planner;
};

struct ExecutionProtocol {
  std::size_t step_budget = 15;
  NoiseConfig noise{.enabled = true};
  ExecutorOptions options;
};

struct BenchConfig {
  std::vector<std::size_t> object_counts{4, 6, 8};
  std::size_t scenes_per_count = 100;
  std::size_t runs_per_scene = 3;
  double size_min = 0.03;
  double size_max = 0.07;
  Rect workspace{{0.0, 0.0}, {1.0, 1.0}};
  double tolerance = kDefaultTolerance;
  std::vector<Variant> variants;
  std::uint64_t master_seed = 1;
  std::size_t jobs = 1;
  /// Hand-made scenes appended to the sweep after the generated ones.
  std::vector<Scene> injected;
  /// When set, run_execution_benchmark uses this protocol.
  std::optional<ExecutionProtocol> execution;

  /// Throws BenchError naming the first invalid field.
  void validate() const;
};

/// The two variants compared throughout: pick-and-place only, and with push-placement.
std::vector<Variant> default_variants(const Budget& budget);

/// Heterogeneous object sizes, start and goal arrangements each collision-free
/// (they may overlap each other). Throws BenchError when the workspace is too
/// small or rejection sampling runs out of attempts.
Scene generate_scene(std::size_t n, const BenchConfig& cfg, Rng& rng);

/// Deterministic scene for (master_seed, n, scene_index).
Scene scene_for(const BenchConfig& cfg, std::size_t n, std::size_t scene_index);

/// Seed of one run of one variant on one scene.
std::uint64_t run_seed(const BenchConfig& cfg, std::string_view variant, std::size_t n,
                       std::size_t scene_index, std::size_t run_index);

struct BenchRecord {
  std::string variant;
  std::size_t n = 0;
  std::size_t scene_index = 0;
  std::size_t run_index = 0;
  bool plan_found = false;
  std::size_t actions = 0;
  double cost = 0.0;
  /// Zero for expansion budgets, which keeps record files byte-stable.
  double planning_time_ms = 0.0;
  double measured_time_ms = 0.0;
  std::size_t iterations = 0;
};

/// One record per (variant, N, scene, run), sorted by that key. Planning
/// failures are recorded, never thrown.
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, PushCheckStats* stats = nullptr);

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Mean and sample standard deviation (0 for fewer than two values).
Stat mean_std(std::span<const double> values);

struct CellSummary {
  std::string variant;
  std::size_t n = 0;
  std::size_t scenes = 0;
  std::size_t scenes_solved = 0;
  std::size_t runs = 0;
  std::size_t runs_solved = 0;
  Stat actions;
  Stat cost;
};

struct ReductionRow {
  std::string baseline;
  std::string candidate;
  std::size_t n = 0;
  double percent = 0.0;
};

struct Summary {
  std::vector<CellSummary> cells;
  std::vector<ReductionRow> reductions;

  const CellSummary& cell(std::string_view variant, std::size_t n) const;
  std::optional<double> reduction(std::string_view baseline, std::string_view candidate,
                                  std::size_t n) const;
};

/// Per (variant, N): mean over solved runs of each scene, then mean and std
/// across scenes. Reductions compare every push-enabled variant with every
/// pick-and-place-only variant. Throws BenchError on an empty cell.
Summary aggregate(std::span<const BenchRecord> records, const BenchConfig& cfg);

struct ExecutionRecord {
  std::string variant;
  std::size_t n = 0;
  std::size_t scene_index = 0;
  std::size_t run_index = 0;
  Termination terminated_by = Termination::StepBudget;
  std::size_t actions = 0;
  double success_rate = 0.0;
  double robot_time_proxy = 0.0;
};

std::vector<ExecutionRecord> run_execution_benchmark(const BenchConfig& cfg);

struct ExecutionSummary {
  std::string variant;
  std::size_t n = 0;
  Stat actions;
  Stat success_rate;
  Stat robot_time;
};

std::vector<ExecutionSummary> aggregate_execution(std::span<const ExecutionRecord> records,
                                                  const BenchConfig& cfg);

}  // namespace pplan
