#pragma once

// Motion cost of plans: lambda-scaled end-effector travel, split into the
// approach to the grasp, a fixed pick stroke, and the grasped transfer.

#include <utility>
#include <vector>

#include "pplan/push_config.hpp"
#include "pplan/scene.hpp"

namespace pplan {

struct CostModel {
  double lambda = 1.0;
  /// Grasp acquisition plus lift travel (two 0.1 m vertical strokes).
  double pick = 0.2;
};

struct CostBreakdown {
  double approach{0.0};
  double pick{0.0};
  double transfer{0.0};
  double lambda{1.0};

  double cost() const { return lambda * (approach + pick + transfer); }
};

/// Planar point end effector.
struct EEState {
  Vec2 pose;
  Vec2 home;
};

/// End effector at rest over the workspace center.
EEState home_state(const Scene& scene);

struct Plan {
  std::vector<Action> actions;
  std::vector<CostBreakdown> costs;
  double total{0.0};

  std::size_t size() const { return actions.size(); }
};

/// Cost of one action from the current end-effector pose. The effector ends
/// at the placement point. Throws InfeasibleAction for infeasible actions.
std::pair<CostBreakdown, EEState> action_cost(const Scene& scene, const Action& action,
                                              const EEState& ee, const CostModel& model = {},
                                              const PushConfig& push = {});

/// J = sum of action costs along the replay from `start`, threading the
/// effector from `home`. Throws InfeasibleAction when the replay fails.
double plan_cost(const Plan& plan, const Scene& start, const CostModel& model, Vec2 home,
                 const PushConfig& push = {});

/// 100 * (baseline - candidate) / baseline. Throws std::invalid_argument
/// when baseline <= 0.
double percent_reduction(double baseline_mean, double candidate_mean);

}  // namespace pplan
