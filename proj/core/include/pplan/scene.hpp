#pragma once

// Scene state, goal predicates and the planner-model transition.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pplan/geometry.hpp"
#include "pplan/push_config.hpp"

namespace pplan {

using ObjectId = std::size_t;

inline constexpr double kDefaultTolerance = 0.005;

struct ObjectSpec {
  ObjectId id{0};
  HalfDims half;
  std::optional<std::string> color;
};

struct Arrangement {
  std::vector<Vec2> poses;

  std::size_t size() const { return poses.size(); }
  bool operator==(const Arrangement&) const = default;
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by apply_action when an action violates a feasibility condition.
class InfeasibleAction : public std::runtime_error {
 public:
  enum class Reason { InvalidObject, OutOfWorkspace, Overlap, InadmissiblePush };

  InfeasibleAction(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// Immutable problem definition shared by every state of one rearrangement task.
struct Problem {
  Rect workspace;
  std::vector<ObjectSpec> objects;
  Arrangement goal;
  double tolerance{kDefaultTolerance};
};

/// A rearrangement problem together with the current arrangement. Copies are
/// cheap: the problem definition is shared and only the poses are owned.
class Scene {
 public:
  /// Validates every invariant and throws SceneError naming the first violation.
  Scene(Rect workspace, std::vector<ObjectSpec> objects, Arrangement start, Arrangement goal,
        double tolerance = kDefaultTolerance);

  /// Same problem, different current arrangement (validated).
  Scene with_current(Arrangement current) const;

  std::size_t size() const { return current_.size(); }
  const Rect& workspace() const { return problem_->workspace; }
  double tolerance() const { return problem_->tolerance; }
  const std::vector<ObjectSpec>& objects() const { return problem_->objects; }
  const ObjectSpec& object(ObjectId id) const;
  const Arrangement& current() const { return current_; }
  const Arrangement& goal() const { return problem_->goal; }

  Vec2 pose(ObjectId id) const;
  Vec2 goal_pose(ObjectId id) const;
  Rect footprint(ObjectId id) const;
  Rect goal_footprint(ObjectId id) const;
  Rect footprint_at(ObjectId id, Vec2 center) const;

  void check_id(ObjectId id) const;

 private:
  Scene(std::shared_ptr<const Problem> problem, Arrangement current);
  void validate_current() const;

  std::shared_ptr<const Problem> problem_;
  Arrangement current_;
};

struct PickPlace {
  ObjectId object{0};
  Vec2 destination;
  bool operator==(const PickPlace&) const = default;
};

struct PushPlace {
  ObjectId object{0};
  Side side{Side::Left};
  Vec2 pre_push;
  bool operator==(const PushPlace&) const = default;
};

using Action = std::variant<PickPlace, PushPlace>;

ObjectId action_object(const Action& action);
std::string describe(const Action& action);

/// ||p_i - p_i*|| <= tolerance. Throws SceneError on an invalid id.
bool is_at_goal(const Scene& scene, ObjectId object);
std::size_t satisfied_count(const Scene& scene);
bool all_at_goal(const Scene& scene);

/// Ids j != target whose current footprint overlaps the target's goal footprint,
/// in ascending order.
std::vector<ObjectId> blockers_of(const Scene& scene, ObjectId target);
bool goal_region_free(const Scene& scene, ObjectId target);

/// True iff `object` placed at `center` lies in the workspace and overlaps no
/// other current footprint.
bool placement_free(const Scene& scene, ObjectId object, Vec2 center);

/// Planner-model transition. PickPlace moves one object; PushPlace puts the
/// target at its goal and translates each blocker by its admissible
/// displacement. Throws InfeasibleAction naming the violated condition.
Scene apply_action(const Scene& scene, const Action& action, const PushConfig& push = {});

}  // namespace pplan
