#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "pplan/bench.hpp"
#include "pplan/executor.hpp"
#include "pplan/io.hpp"
#include "pplan/planner.hpp"

namespace pplan::cli {

namespace {

// Maps library exceptions onto the exit-code contract.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const SceneError& e) {
    err << "invalid scene: " << e.what() << "\n";
  } catch (const BenchError& e) {
    err << "invalid bench config: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const InfeasibleAction& e) {
    err << "invalid plan: " << e.what() << "\n";
  }
  return kInputError;
}

PlannerConfig load_planner(const fs::path& config_file, std::optional<std::uint64_t> seed) {
  PlannerConfig cfg = planner_config_from_json(load_json_file(config_file));
  if (seed) cfg.seed = *seed;
  return cfg;
}

}  // namespace

std::optional<std::uint64_t> resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return flag;
  const char* env = std::getenv("PPLAN_SEED");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') {
    throw InputError(std::string("PPLAN_SEED is not an unsigned integer: '") + env + "'");
  }
  return static_cast<std::uint64_t>(v);
}

int cmd_plan(const fs::path& scene_file, const fs::path& config_file, const fs::path& out_file,
             std::optional<std::uint64_t> seed, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = scene_from_json(load_json_file(scene_file));
    const PlannerConfig cfg = load_planner(config_file, resolve_seed(seed));
    const SearchResult result = search(scene, cfg);
    if (!result.plan) {
      err << "no plan found within budget (" << result.iterations << " expansions)\n";
      return int{kFailure};
    }
    write_text_file(out_file, to_json(*result.plan).dump(2) + "\n");
    return int{kOk};
  });
}

int cmd_execute(const fs::path& scene_file, const fs::path& config_file, const fs::path& out_file, bool noise,
                std::size_t steps, std::optional<std::uint64_t> seed, std::ostream& err) {
  return guarded(err, [&] {
    if (steps == 0) throw InputError("--steps must be at least 1");
    const Scene scene = scene_from_json(load_json_file(scene_file));
    const Json cfg_json = load_json_file(config_file);
    const std::optional<std::uint64_t> s = resolve_seed(seed);
    PlannerConfig cfg = planner_config_from_json(cfg_json);
    if (s) cfg.seed = *s;
    NoiseConfig nc;
    if (cfg_json.contains("noise")) nc = noise_config_from_json(cfg_json.at("noise"));
    if (noise) nc.enabled = true;
    const ExecutionReport report = execute(scene, cfg, nc, steps, cfg.seed);
    write_text_file(out_file, to_json(report).dump(2) + "\n");
    if (report.terminated_by != Termination::AllAtGoal) {
      err << "execution ended by " << to_string(report.terminated_by) << "\n";
      return int{kFailure};
    }
    return int{kOk};
  });
}

int cmd_bench(const fs::path& config_file, const fs::path& out_dir, std::optional<std::size_t> jobs,
              std::optional<std::uint64_t> seed, std::ostream& err) {
  return guarded(err, [&] {
    BenchConfig cfg = bench_config_from_json(load_json_file(config_file));
    if (const auto s = resolve_seed(seed)) cfg.master_seed = *s;
    if (jobs) cfg.jobs = *jobs;
    cfg.validate();
    const std::vector<BenchRecord> records = run_benchmark(cfg);
    const Summary summary = aggregate(records, cfg);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "records.csv", records_csv(records));
    write_text_file(out_dir / "summary.json", to_json(summary).dump(2) + "\n");
    write_text_file(out_dir / "summary.csv", summary_csv(summary));
    write_text_file(out_dir / "summary.svg", render_summary(summary));
    if (cfg.execution) {
      const auto exec = run_execution_benchmark(cfg);
      write_text_file(out_dir / "execution_records.csv", execution_records_csv(exec));
      const auto exec_summary = aggregate_execution(exec, cfg);
      write_text_file(out_dir / "execution_summary.json", to_json(exec_summary).dump(2) + "\n");
    }
    return int{kOk};
  });
}

int cmd_render(const fs::path& scene_file, const std::optional<fs::path>& plan_file, const fs::path& out_file,
               const RenderStyle& style, bool frames, std::ostream& err) {
  return guarded(err, [&] {
    if (!(style.scale > 0.0)) throw InputError("--scale must be positive");
    const Scene scene = scene_from_json(load_json_file(scene_file));
    std::optional<Plan> plan;
    if (plan_file) plan = plan_from_json(load_json_file(*plan_file));
    if (!frames) {
      write_text_file(out_file, render_scene(scene, style, {}, plan ? plan->actions : std::vector<Action>{}));
      return int{kOk};
    }
    const auto svgs = render_frames(scene, plan.value_or(Plan{}), style);
    const fs::path dir = out_file.parent_path();
    const std::string stem = out_file.stem().string();
    for (std::size_t i = 0; i < svgs.size(); ++i) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_%03zu.svg", i);
      write_text_file(dir / (stem + suffix), svgs[i]);
    }
    return int{kOk};
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Tabletop rearrangement planning with push-placement"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Override the planner / master seed (fallback: PPLAN_SEED)");

  std::string scene_file, config_file, out_file, plan_file, out_dir;

  auto* plan_cmd = app.add_subcommand("plan", "Plan a rearrangement and write Plan JSON");
  plan_cmd->add_option("scene", scene_file)->required();
  plan_cmd->add_option("config", config_file)->required();
  plan_cmd->add_option("out", out_file)->required();

  bool noise = false;
  std::size_t steps = 15;
  auto* exec_cmd = app.add_subcommand("execute", "Closed-loop execution with replanning");
  exec_cmd->add_option("scene", scene_file)->required();
  exec_cmd->add_option("config", config_file)->required();
  exec_cmd->add_option("out", out_file)->required();
  exec_cmd->add_flag("--noise", noise, "Enable execution noise");
  exec_cmd->add_option("--steps", steps, "Step budget")->capture_default_str();

  std::optional<std::size_t> jobs;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("config", config_file)->required();
  bench_cmd->add_option("out_dir", out_dir)->required();
  bench_cmd->add_option("--jobs", jobs, "Worker threads");

  RenderStyle style;
  bool no_goals = false, frames = false;
  auto* render_cmd = app.add_subcommand("render", "Render a scene or plan to SVG");
  render_cmd->add_option("scene", scene_file)->required();
  render_cmd->add_option("out", out_file)->required();
  render_cmd->add_option("--plan", plan_file, "Plan JSON to overlay");
  render_cmd->add_flag("--frames", frames, "One SVG per plan step");
  render_cmd->add_flag("--gripper", style.show_gripper, "Mark the manipulated object");
  render_cmd->add_flag("--no-goals", no_goals, "Hide goal footprints");
  render_cmd->add_option("--scale", style.scale, "Pixels per meter")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (plan_cmd->parsed()) return cmd_plan(scene_file, config_file, out_file, seed, std::cerr);
  if (exec_cmd->parsed()) return cmd_execute(scene_file, config_file, out_file, noise, steps, seed, std::cerr);
  if (bench_cmd->parsed()) return cmd_bench(config_file, out_dir, jobs, seed, std::cerr);
  style.show_goals = !no_goals;
  std::optional<fs::path> plan_path;
  if (!plan_file.empty()) plan_path = plan_file;
  return cmd_render(scene_file, plan_path, out_file, style, frames, std::cerr);
}

}  // namespace pplan::cli
