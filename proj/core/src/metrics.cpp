#include "pplan/metrics.hpp"

#include <stdexcept>

#include "pplan/primitives.hpp"

namespace pplan {

EEState home_state(const Scene& scene) {
  const Vec2 c = scene.workspace().center();
  return {c, c};
}

std::pair<CostBreakdown, EEState> action_cost(const Scene& scene, const Action& action,
                                              const EEState& ee, const CostModel& model,
                                              const PushConfig& push) {
  const ObjectId id = action_object(action);
  if (id >= scene.size()) {
    throw InfeasibleAction(InfeasibleAction::Reason::InvalidObject,
                           "invalid object id " + std::to_string(id));
  }
  const Vec2 grasp = scene.pose(id);
  CostBreakdown c{distance(ee.pose, grasp), model.pick, 0.0, model.lambda};
  Vec2 placed;
  if (const auto* pp = std::get_if<PickPlace>(&action)) {
    if (!placement_free(scene, id, pp->destination)) {
      throw InfeasibleAction(InfeasibleAction::Reason::Overlap,
                             describe(action) + ": destination is not free");
    }
    c.transfer = distance(grasp, pp->destination);
    placed = pp->destination;
  } else {
    const auto proposal = proposal_for(scene, std::get<PushPlace>(action), push);
    c.transfer = distance(grasp, proposal.pre_push) + distance(proposal.pre_push, proposal.goal_pose);
    placed = proposal.goal_pose;
  }
  return {c, EEState{placed, ee.home}};
}

double plan_cost(const Plan& plan, const Scene& start, const CostModel& model, Vec2 home,
                 const PushConfig& push) {
  EEState ee{home, home};
  Scene state = start;
  double total = 0.0;
  for (const Action& a : plan.actions) {
    auto [c, next] = action_cost(state, a, ee, model, push);
    total += c.cost();
    ee = next;
    state = apply_action(state, a, push);
  }
  return total;
}

double percent_reduction(double baseline_mean, double candidate_mean) {
  if (!(baseline_mean > 0.0)) throw std::invalid_argument("baseline mean must be positive");
  return 100.0 * (baseline_mean - candidate_mean) / baseline_mean;
}

}  // namespace pplan
