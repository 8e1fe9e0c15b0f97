#pragma once

// Push-placement admissibility and the pick-and-place buffer fallback.
//
// A push along side s works as follows: the grasped target is lowered at the
// pre-push pose p0, aligned with its goal on the axis perpendicular to s and
// `clearance` behind the outermost blocker. It then travels along s until its
// leading face is `clearance` past the goal footprint, which leaves every
// blocker `clearance` clear of the goal, and finally settles on the goal pose.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pplan/push_config.hpp"
#include "pplan/random.hpp"
#include "pplan/scene.hpp"

namespace pplan {

struct BlockerMove {
  ObjectId id{0};
  double displacement{0.0};
};

struct PushProposal {
  ObjectId target{0};
  Side side{Side::Left};
  Vec2 pre_push;
  std::vector<BlockerMove> blocker_moves;
  Vec2 goal_pose;
  /// Distance the target overshoots the goal before settling on it.
  double overshoot{0.0};

  /// Pose at the end of the sweep, `overshoot` past the goal along the side.
  Vec2 sweep_end() const { return goal_pose + direction(side) * overshoot; }
  PushPlace action() const { return {target, side, pre_push}; }
};

/// Instrumentation counters for the admissibility checks.
struct PushCheckStats {
  std::size_t calls = 0;
  std::size_t side_evaluations = 0;
  /// One per blocker per side: an edge check plus a corridor check.
  std::size_t blocker_checks = 0;
  std::size_t pose_validations = 0;
  std::size_t max_sides_per_call = 0;
  /// Sides on which more blocker checks ran than there were blockers.
  std::size_t superlinear_sides = 0;
  /// Sum of |B| over calls; 4 * this bounds blocker_checks.
  std::size_t blocker_total = 0;
};

/// Minimal translation along `side` that takes `blocker` off the target's goal
/// footprint, plus `clearance`. Throws std::invalid_argument when the blocker
/// does not overlap that footprint.
double blocker_displacement(const Scene& scene, ObjectId blocker, ObjectId target, Side side,
                            double clearance);

/// True iff the region swept by `blocker` over `displacement` along `side`
/// overlaps no footprint except the blocker's own and those listed in `exclude`.
bool corridor_clear(const Scene& scene, ObjectId blocker, Side side, double displacement,
                    std::span<const ObjectId> exclude);

/// True iff the blocker's post-push footprint lies in the workspace shrunk by `margin`.
bool edge_safe(const Scene& scene, ObjectId blocker, Side side, double displacement, double margin);

/// Admissibility of a single side. Returns the proposal when every blocker
/// passes the edge and corridor checks and p0 validates.
std::optional<PushProposal> evaluate_side(const Scene& scene, ObjectId target, Side side,
                                          const PushConfig& cfg, PushCheckStats* stats = nullptr);

/// Tries sides in cfg.side_order and returns the first admissible proposal.
/// Throws std::invalid_argument when the target's goal has no blockers.
std::optional<PushProposal> select_push(const Scene& scene, ObjectId target, const PushConfig& cfg,
                                        PushCheckStats* stats = nullptr);

/// Recomputes the proposal behind a PushPlace action; throws InfeasibleAction
/// (InadmissiblePush) when the side is not admissible or p0 does not match.
PushProposal proposal_for(const Scene& scene, const PushPlace& action, const PushConfig& cfg);

/// Uniform rejection sampling of a buffer pose for `object` that overlaps no
/// current footprint of another object and no goal footprint of any object not
/// yet at its goal.
std::optional<Vec2> sample_buffer_pose(const Scene& scene, ObjectId object, Rng& rng,
                                       std::size_t max_attempts = 100);

}  // namespace pplan
