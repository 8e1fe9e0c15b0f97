#pragma once

// Receding-horizon execution: plan from the observed state, execute only the
// first action in the simulator, observe, repeat.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pplan/metrics.hpp"
#include "pplan/planner.hpp"
#include "pplan/simulator.hpp"

namespace pplan {

enum class Termination { AllAtGoal, StepBudget, PlanningFailure, ObjectLost };

std::string_view to_string(Termination t);

struct ExecutionStep {
  std::size_t planned_plan_length = 0;
  bool replanned = false;
  /// Set when the simulator refused the action; the step is skipped and replanned.
  bool skipped = false;
  std::string note;
  std::optional<Action> executed_action;
  CostBreakdown cost;
  std::vector<SimEvent> sim_events;
  std::size_t satisfied_after = 0;
  Arrangement post_state;
};

struct ExecutionReport {
  std::vector<ExecutionStep> steps;
  std::size_t total_actions = 0;
  double success_rate = 0.0;
  /// End-effector travel plus a fixed overhead per executed action.
  double robot_time_proxy = 0.0;
  double travel = 0.0;
  Termination terminated_by = Termination::StepBudget;
  Arrangement final_state;
};

struct ExecutorOptions {
  double per_action_overhead = 2.0;
  /// Keep executing the previous plan's remainder while observations match
  /// the planner's prediction (within 1e-9 m); replan as soon as they differ.
  bool reuse_consistent_plan = true;
};

/// Fraction of objects of `scene`'s problem within `tolerance` of their goal
/// in `arrangement`.
double success_fraction(const Scene& scene, const Arrangement& arrangement, double tolerance);

/// Step k plans with seed derive_seed({trial_seed, k, 1}) and simulates with
/// derive_seed({trial_seed, k, 2}), so trials replay exactly.
ExecutionReport execute(const Scene& scene, const PlannerConfig& planner_cfg, const NoiseConfig& noise,
                        std::size_t step_budget, std::uint64_t trial_seed,
                        const ExecutorOptions& options = {});

}  // namespace pplan
