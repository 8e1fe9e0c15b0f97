#include "pplan/scene.hpp"

#include <cmath>
#include <sstream>

#include "pplan/primitives.hpp"

namespace pplan {

namespace {

std::string fmt_vec(Vec2 v) {
  std::ostringstream os;
  os << '(' << v.x << ", " << v.y << ')';
  return os.str();
}

void validate_arrangement(const Problem& p, const Arrangement& arr, const char* which) {
  if (arr.size() != p.objects.size()) {
    throw SceneError(std::string(which) + " arrangement has " + std::to_string(arr.size()) +
                     " poses for " + std::to_string(p.objects.size()) + " objects");
  }
  std::vector<Rect> rects;
  rects.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr.poses[i].finite()) {
      throw SceneError(std::string(which) + " pose of object " + std::to_string(i) + " is not finite");
    }
    rects.push_back(rect_from_center(arr.poses[i], p.objects[i].half));
    if (!contains(p.workspace, rects.back())) {
      throw SceneError(std::string(which) + " footprint of object " + std::to_string(i) +
                       " at " + fmt_vec(arr.poses[i]) + " leaves the workspace");
    }
  }
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (overlaps(rects[i], rects[j])) {
        throw SceneError(std::string(which) + " footprints of objects " + std::to_string(i) +
                         " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

}  // namespace

Scene::Scene(Rect workspace, std::vector<ObjectSpec> objects, Arrangement start, Arrangement goal,
             double tolerance) {
  if (!workspace.valid() || workspace.area() <= 0.0) throw SceneError("workspace is degenerate");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw SceneError("tolerance must be positive");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].id != i) {
      throw SceneError("object ids must be dense 0..N-1; found id " + std::to_string(objects[i].id) +
                       " at index " + std::to_string(i));
    }
    if (!objects[i].half.valid()) {
      throw SceneError("object " + std::to_string(i) + " has non-positive half-dimensions");
    }
  }
  auto problem = std::make_shared<Problem>();
  problem->workspace = workspace;
  problem->objects = std::move(objects);
  problem->goal = std::move(goal);
  problem->tolerance = tolerance;
  validate_arrangement(*problem, problem->goal, "goal");
  problem_ = std::move(problem);
  current_ = std::move(start);
  validate_current();
}

Scene::Scene(std::shared_ptr<const Problem> problem, Arrangement current)
    : problem_(std::move(problem)), current_(std::move(current)) {
  validate_current();
}

void Scene::validate_current() const { validate_arrangement(*problem_, current_, "current"); }

Scene Scene::with_current(Arrangement current) const { return Scene(problem_, std::move(current)); }

void Scene::check_id(ObjectId id) const {
  if (id >= size()) throw SceneError("invalid object id " + std::to_string(id));
}

const ObjectSpec& Scene::object(ObjectId id) const {
  check_id(id);
  return problem_->objects[id];
}

Vec2 Scene::pose(ObjectId id) const {
  check_id(id);
  return current_.poses[id];
}

Vec2 Scene::goal_pose(ObjectId id) const {
  check_id(id);
  return problem_->goal.poses[id];
}

Rect Scene::footprint(ObjectId id) const { return footprint_at(id, pose(id)); }

Rect Scene::goal_footprint(ObjectId id) const { return footprint_at(id, goal_pose(id)); }

Rect Scene::footprint_at(ObjectId id, Vec2 center) const {
  return rect_from_center(center, object(id).half);
}

ObjectId action_object(const Action& action) {
  return std::visit([](const auto& a) { return a.object; }, action);
}

std::string describe(const Action& action) {
  std::ostringstream os;
  if (const auto* pp = std::get_if<PickPlace>(&action)) {
    os << "PickPlace(" << pp->object << " -> " << fmt_vec(pp->destination) << ')';
  } else {
    const auto& ps = std::get<PushPlace>(action);
    os << "PushPlace(" << ps.object << ", " << to_string(ps.side) << ", p0=" << fmt_vec(ps.pre_push)
       << ')';
  }
  return os.str();
}

bool is_at_goal(const Scene& scene, ObjectId object) {
  return distance(scene.pose(object), scene.goal_pose(object)) <= scene.tolerance();
}

std::size_t satisfied_count(const Scene& scene) {
  std::size_t n = 0;
  for (ObjectId i = 0; i < scene.size(); ++i) n += is_at_goal(scene, i) ? 1 : 0;
  return n;
}

bool all_at_goal(const Scene& scene) { return satisfied_count(scene) == scene.size(); }

std::vector<ObjectId> blockers_of(const Scene& scene, ObjectId target) {
  const Rect goal = scene.goal_footprint(target);
  std::vector<ObjectId> out;
  for (ObjectId j = 0; j < scene.size(); ++j) {
    if (j != target && overlaps(scene.footprint(j), goal)) out.push_back(j);
  }
  return out;
}

bool goal_region_free(const Scene& scene, ObjectId target) {
  return blockers_of(scene, target).empty();
}

bool placement_free(const Scene& scene, ObjectId object, Vec2 center) {
  if (!center.finite()) return false;
  const Rect r = scene.footprint_at(object, center);
  if (!contains(scene.workspace(), r)) return false;
  for (ObjectId j = 0; j < scene.size(); ++j) {
    if (j != object && overlaps(scene.footprint(j), r)) return false;
  }
  return true;
}

Scene apply_action(const Scene& scene, const Action& action, const PushConfig& push) {
  const ObjectId id = action_object(action);
  if (id >= scene.size()) {
    throw InfeasibleAction(InfeasibleAction::Reason::InvalidObject,
                           "invalid object id " + std::to_string(id));
  }
  Arrangement next = scene.current();

  if (const auto* pp = std::get_if<PickPlace>(&action)) {
    if (!pp->destination.finite()) {
      throw InfeasibleAction(InfeasibleAction::Reason::OutOfWorkspace, "destination is not finite");
    }
    const Rect r = scene.footprint_at(id, pp->destination);
    if (!contains(scene.workspace(), r)) {
      throw InfeasibleAction(InfeasibleAction::Reason::OutOfWorkspace,
                             describe(action) + ": destination leaves the workspace");
    }
    for (ObjectId j = 0; j < scene.size(); ++j) {
      if (j != id && overlaps(scene.footprint(j), r)) {
        throw InfeasibleAction(InfeasibleAction::Reason::Overlap,
                               describe(action) + ": destination overlaps object " + std::to_string(j));
      }
    }
    next.poses[id] = pp->destination;
  } else {
    const auto proposal = proposal_for(scene, std::get<PushPlace>(action), push);
    next.poses[id] = proposal.goal_pose;
    const Vec2 dir = direction(proposal.side);
    for (const auto& move : proposal.blocker_moves) {
      next.poses[move.id] = next.poses[move.id] + dir * move.displacement;
    }
  }

  try {
    return scene.with_current(std::move(next));
  } catch (const SceneError& e) {
    throw InfeasibleAction(InfeasibleAction::Reason::Overlap, describe(action) + ": " + e.what());
  }
}

}  // namespace pplan
