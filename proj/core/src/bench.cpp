#include "pplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

namespace pplan {

namespace {

constexpr std::uint64_t kSceneTag = 0x5ce0e;
constexpr std::uint64_t kRunTag = 0x7a1;
constexpr std::size_t kPoseAttempts = 10000;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      (void)t;
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Arrangement sample_arrangement(const std::vector<ObjectSpec>& objects, const Rect& ws, Rng& rng,
                               const char* which) {
  Arrangement arr;
  std::vector<Rect> placed;
  for (const auto& o : objects) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt < kPoseAttempts && !ok; ++attempt) {
      const Vec2 c{rng.uniform(ws.lo.x + o.half.a, ws.hi.x - o.half.a),
                   rng.uniform(ws.lo.y + o.half.b, ws.hi.y - o.half.b)};
      const Rect r = rect_from_center(c, o.half);
      if (!contains(ws, r)) continue;
      if (std::any_of(placed.begin(), placed.end(), [&](const Rect& p) { return overlaps(p, r); })) {
        continue;
      }
      arr.poses.push_back(c);
      placed.push_back(r);
      ok = true;
    }
    if (!ok) {
      throw BenchError(std::string("could not place object ") + std::to_string(o.id) + " in the " +
                       which + " arrangement after " + std::to_string(kPoseAttempts) +
                       " attempts; use a larger workspace or fewer/smaller objects");
    }
  }
  return arr;
}

struct SceneKey {
  std::size_t n;
  std::size_t index;
};

// Generated scenes for each count, followed by the injected scenes.
std::vector<std::pair<SceneKey, Scene>> all_scenes(const BenchConfig& cfg) {
  std::vector<std::pair<SceneKey, Scene>> out;
  std::map<std::size_t, std::size_t> next_index;
  for (std::size_t n : cfg.object_counts) {
    for (std::size_t s = 0; s < cfg.scenes_per_count; ++s) out.push_back({{n, s}, scene_for(cfg, n, s)});
    next_index[n] = cfg.scenes_per_count;
  }
  for (const Scene& sc : cfg.injected) {
    auto [it, inserted] = next_index.try_emplace(sc.size(), 0);
    out.push_back({{sc.size(), it->second++}, sc});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.n, a.first.index) < std::tie(b.first.n, b.first.index);
  });
  return out;
}

bool is_push_variant(const Variant& v) { return v.planner.push_enabled; }

}  // namespace

void BenchConfig::validate() const {
  if (object_counts.empty() && injected.empty()) throw BenchError("object_counts is empty");
  if (scenes_per_count == 0) throw BenchError("scenes_per_count must be >= 1");
  if (runs_per_scene == 0) throw BenchError("runs_per_scene must be >= 1");
  if (!(size_min > 0.0) || !(size_max >= size_min)) {
    throw BenchError("size_range must satisfy 0 < min <= max");
  }
  if (!workspace.valid() || workspace.area() <= 0.0) throw BenchError("workspace is degenerate");
  if (2.0 * size_max > std::min(workspace.width(), workspace.height())) {
    throw BenchError("size_range max does not fit in the workspace");
  }
  if (variants.empty()) throw BenchError("variants is empty");
  for (std::size_t i = 0; i < variants.size(); ++i) {
    for (std::size_t j = i + 1; j < variants.size(); ++j) {
      if (variants[i].name == variants[j].name) throw BenchError("duplicate variant '" + variants[i].name + "'");
    }
    try {
      variants[i].planner.validate();
    } catch (const std::invalid_argument& e) {
      throw BenchError("variant '" + variants[i].name + "': " + e.what());
    }
  }
  if (execution && execution->step_budget == 0) throw BenchError("execution.step_budget must be >= 1");
}

std::vector<Variant> default_variants(const Budget& budget) {
  PlannerConfig base;
  base.budget = budget;
  base.push_enabled = false;
  PlannerConfig pp = base;
  pp.push_enabled = true;
  return {{"MCTS", base}, {"MCTS+PP", pp}};
}

Scene generate_scene(std::size_t n, const BenchConfig& cfg, Rng& rng) {
  const double max_area = 4.0 * cfg.size_max * cfg.size_max;
  if (static_cast<double>(n) * max_area > 0.4 * cfg.workspace.area()) {
    throw BenchError(std::to_string(n) + " objects of half-size up to " + std::to_string(cfg.size_max) +
                     " m exceed 40% of the workspace area; use a larger workspace");
  }
  std::vector<ObjectSpec> objects;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform(cfg.size_min, cfg.size_max);
    const double b = rng.uniform(cfg.size_min, cfg.size_max);
    objects.push_back({i, {a, b}, std::nullopt});
  }
  Arrangement start = sample_arrangement(objects, cfg.workspace, rng, "start");
  Arrangement goal = sample_arrangement(objects, cfg.workspace, rng, "goal");
  return Scene(cfg.workspace, std::move(objects), std::move(start), std::move(goal), cfg.tolerance);
}

Scene scene_for(const BenchConfig& cfg, std::size_t n, std::size_t scene_index) {
  Rng rng(derive_seed({cfg.master_seed, kSceneTag, n, scene_index}));
  return generate_scene(n, cfg, rng);
}

std::uint64_t run_seed(const BenchConfig& cfg, std::string_view variant, std::size_t n,
                       std::size_t scene_index, std::size_t run_index) {
  return derive_seed({cfg.master_seed, kRunTag, fnv1a(variant), n, scene_index, run_index});
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, PushCheckStats* stats) {
  cfg.validate();
  const auto scenes = all_scenes(cfg);

  struct Cell {
    std::size_t variant;
    std::size_t scene;
    std::size_t run;
  };
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      for (std::size_t r = 0; r < cfg.runs_per_scene; ++r) cells.push_back({v, s, r});
    }
  }

  std::vector<BenchRecord> records(cells.size());
  std::vector<PushCheckStats> cell_stats(stats ? cells.size() : 0);
  parallel_for(cells.size(), cfg.jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const Variant& variant = cfg.variants[c.variant];
    const auto& [key, scene] = scenes[c.scene];
    PlannerConfig pc = variant.planner;
    pc.seed = run_seed(cfg, variant.name, key.n, key.index, c.run);
    const SearchResult res = search(scene, pc, stats ? &cell_stats[i] : nullptr);

    BenchRecord& rec = records[i];
    rec.variant = variant.name;
    rec.n = key.n;
    rec.scene_index = key.index;
    rec.run_index = c.run;
    rec.plan_found = res.plan.has_value();
    rec.actions = res.plan ? res.plan->size() : 0;
    rec.cost = res.plan ? res.plan->total : 0.0;
    rec.measured_time_ms = res.seconds * 1000.0;
    rec.planning_time_ms = pc.budget.kind == Budget::Kind::WallClock ? rec.measured_time_ms : 0.0;
    rec.iterations = res.iterations;
  });

  if (stats) {
    for (const auto& s : cell_stats) {
      stats->calls += s.calls;
      stats->side_evaluations += s.side_evaluations;
      stats->blocker_checks += s.blocker_checks;
      stats->pose_validations += s.pose_validations;
      stats->superlinear_sides += s.superlinear_sides;
      stats->blocker_total += s.blocker_total;
      stats->max_sides_per_call = std::max(stats->max_sides_per_call, s.max_sides_per_call);
    }
  }
  return records;
}

Stat mean_std(std::span<const double> values) {
  Stat s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

const CellSummary& Summary::cell(std::string_view variant, std::size_t n) const {
  for (const auto& c : cells) {
    if (c.variant == variant && c.n == n) return c;
  }
  throw BenchError("no summary cell for variant '" + std::string(variant) + "', N=" + std::to_string(n));
}

std::optional<double> Summary::reduction(std::string_view baseline, std::string_view candidate,
                                         std::size_t n) const {
  for (const auto& r : reductions) {
    if (r.baseline == baseline && r.candidate == candidate && r.n == n) return r.percent;
  }
  return std::nullopt;
}

namespace {

std::vector<std::size_t> cell_counts(std::span<const std::size_t> counts, const BenchConfig& cfg) {
  std::vector<std::size_t> out(counts.begin(), counts.end());
  for (const Scene& s : cfg.injected) out.push_back(s.size());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Summary aggregate(std::span<const BenchRecord> records, const BenchConfig& cfg) {
  Summary out;
  const auto counts = cell_counts(cfg.object_counts, cfg);
  for (const auto& v : cfg.variants) {
    for (std::size_t n : counts) {
      // scene -> (sum actions, sum cost, solved runs, runs)
      std::map<std::size_t, std::tuple<double, double, std::size_t, std::size_t>> per_scene;
      for (const auto& r : records) {
        if (r.variant != v.name || r.n != n) continue;
        auto& [sa, sc, solved, runs] = per_scene[r.scene_index];
        ++runs;
        if (!r.plan_found) continue;
        sa += static_cast<double>(r.actions);
        sc += r.cost;
        ++solved;
      }
      if (per_scene.empty()) {
        throw BenchError("no records for variant '" + v.name + "', N=" + std::to_string(n));
      }
      CellSummary cell{v.name, n, per_scene.size(), 0, 0, 0, {}, {}};
      std::vector<double> actions, costs;
      for (const auto& [scene, t] : per_scene) {
        const auto& [sa, sc, solved, runs] = t;
        cell.runs += runs;
        cell.runs_solved += solved;
        if (solved == 0) continue;
        ++cell.scenes_solved;
        actions.push_back(sa / static_cast<double>(solved));
        costs.push_back(sc / static_cast<double>(solved));
      }
      cell.actions = mean_std(actions);
      cell.cost = mean_std(costs);
      out.cells.push_back(cell);
    }
  }
  for (const auto& base : cfg.variants) {
    if (is_push_variant(base)) continue;
    for (const auto& cand : cfg.variants) {
      if (!is_push_variant(cand)) continue;
      for (std::size_t n : counts) {
        const auto& b = out.cell(base.name, n);
        const auto& c = out.cell(cand.name, n);
        if (b.scenes_solved == 0 || c.scenes_solved == 0 || !(b.cost.mean > 0.0)) continue;
        out.reductions.push_back({base.name, cand.name, n, percent_reduction(b.cost.mean, c.cost.mean)});
      }
    }
  }
  return out;
}

std::vector<ExecutionRecord> run_execution_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  const ExecutionProtocol protocol = cfg.execution.value_or(ExecutionProtocol{});
  const auto scenes = all_scenes(cfg);

  struct Cell {
    std::size_t variant;
    std::size_t scene;
    std::size_t run;
  };
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      for (std::size_t r = 0; r < cfg.runs_per_scene; ++r) cells.push_back({v, s, r});
    }
  }
  std::vector<ExecutionRecord> records(cells.size());
  parallel_for(cells.size(), cfg.jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const Variant& variant = cfg.variants[c.variant];
    const auto& [key, scene] = scenes[c.scene];
    const auto seed = run_seed(cfg, variant.name, key.n, key.index, c.run);
    const auto report =
        execute(scene, variant.planner, protocol.noise, protocol.step_budget, seed, protocol.options);
    records[i] = {variant.name,          key.n,          key.index, c.run, report.terminated_by,
                  report.total_actions, report.success_rate, report.robot_time_proxy};
  });
  return records;
}

std::vector<ExecutionSummary> aggregate_execution(std::span<const ExecutionRecord> records,
                                                  const BenchConfig& cfg) {
  std::vector<ExecutionSummary> out;
  const auto counts = cell_counts(cfg.object_counts, cfg);
  for (const auto& v : cfg.variants) {
    for (std::size_t n : counts) {
      std::map<std::size_t, std::tuple<double, double, double, std::size_t>> per_scene;
      for (const auto& r : records) {
        if (r.variant != v.name || r.n != n) continue;
        auto& [a, s, t, runs] = per_scene[r.scene_index];
        a += static_cast<double>(r.actions);
        s += r.success_rate;
        t += r.robot_time_proxy;
        ++runs;
      }
      if (per_scene.empty()) {
        throw BenchError("no execution records for variant '" + v.name + "', N=" + std::to_string(n));
      }
      std::vector<double> actions, success, time;
      for (const auto& [scene, t] : per_scene) {
        const auto& [a, s, tm, runs] = t;
        const double k = static_cast<double>(runs);
        actions.push_back(a / k);
        success.push_back(s / k);
        time.push_back(tm / k);
      }
      out.push_back({v.name, n, mean_std(actions), mean_std(success), mean_std(time)});
    }
  }
  return out;
}

}  // namespace pplan
