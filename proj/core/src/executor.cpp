#include "pplan/executor.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace pplan {

namespace {

bool matches(const Arrangement& a, const Arrangement& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.poses[i].x - b.poses[i].x) > 1e-9 || std::abs(a.poses[i].y - b.poses[i].y) > 1e-9) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::AllAtGoal: return "AllAtGoal";
    case Termination::StepBudget: return "StepBudget";
    case Termination::PlanningFailure: return "PlanningFailure";
    case Termination::ObjectLost: return "ObjectLost";
  }
  return "?";
}

double success_fraction(const Scene& scene, const Arrangement& arrangement, double tolerance) {
  if (scene.size() == 0) return 1.0;
  std::size_t ok = 0;
  for (ObjectId i = 0; i < scene.size(); ++i) {
    if (distance(arrangement.poses.at(i), scene.goal_pose(i)) <= tolerance) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(scene.size());
}

ExecutionReport execute(const Scene& scene, const PlannerConfig& planner_cfg, const NoiseConfig& noise,
                        std::size_t step_budget, std::uint64_t trial_seed,
                        const ExecutorOptions& options) {
  if (step_budget == 0) throw std::invalid_argument("step budget must be >= 1");
  noise.validate();

  ExecutionReport report;
  Scene state = scene;
  EEState ee = home_state(scene);
  std::deque<Action> pending;
  std::optional<Termination> terminated;

  for (std::size_t k = 0; k < step_budget && !terminated; ++k) {
    if (all_at_goal(state)) {
      terminated = Termination::AllAtGoal;
      break;
    }
    ExecutionStep step;
    if (pending.empty() || !options.reuse_consistent_plan) {
      PlannerConfig cfg = planner_cfg;
      cfg.seed = derive_seed({trial_seed, k, 1});
      auto found = plan(state, cfg);
      if (!found) {
        terminated = Termination::PlanningFailure;
        break;
      }
      pending.assign(found->actions.begin(), found->actions.end());
      step.replanned = true;
    }
    step.planned_plan_length = pending.size();
    const Action action = pending.front();
    const Scene predicted = apply_action(state, action, planner_cfg.push);

    Rng noise_rng(derive_seed({trial_seed, k, 2}));
    std::optional<SimResult> sim;
    try {
      sim = simulate(state, action, noise, noise_rng, planner_cfg.push);
    } catch (const SimulationError& e) {
      step.skipped = true;
      step.note = e.what();
      step.post_state = state.current();
      step.satisfied_after = satisfied_count(state);
      pending.clear();
      report.steps.push_back(std::move(step));
      continue;
    }

    auto [cost, next_ee] = action_cost(state, action, ee, planner_cfg.cost, planner_cfg.push);
    ee = next_ee;
    report.travel += cost.approach + cost.pick + cost.transfer;
    ++report.total_actions;

    step.executed_action = action;
    step.cost = cost;
    step.sim_events = sim->events;
    state = sim->scene;
    step.post_state = state.current();
    step.satisfied_after = satisfied_count(state);
    report.steps.push_back(std::move(step));

    if (sim->has(SimEventKind::LeftTable)) {
      terminated = Termination::ObjectLost;
      break;
    }
    if (matches(state.current(), predicted.current())) {
      pending.pop_front();
    } else {
      pending.clear();
    }
  }

  if (all_at_goal(state)) {
    terminated = Termination::AllAtGoal;
  } else if (!terminated) {
    terminated = Termination::StepBudget;
  }
  report.terminated_by = *terminated;
  report.final_state = state.current();
  report.success_rate = success_fraction(state, state.current(), state.tolerance());
  report.robot_time_proxy =
      report.travel + options.per_action_overhead * static_cast<double>(report.total_actions);
  return report;
}

}  // namespace pplan
