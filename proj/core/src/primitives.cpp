#include "pplan/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pplan {

void PushConfig::validate() const {
  if (!(clearance >= 0.0) || !std::isfinite(clearance)) {
    throw std::invalid_argument("push clearance must be >= 0");
  }
  if (!(edge_margin >= 0.0) || !std::isfinite(edge_margin)) {
    throw std::invalid_argument("push edge_margin must be >= 0");
  }
  std::array<int, 4> seen{};
  for (Side s : side_order) ++seen[static_cast<int>(s)];
  for (int c : seen) {
    if (c != 1) throw std::invalid_argument("push side_order must be a permutation of all four sides");
  }
}

double blocker_displacement(const Scene& scene, ObjectId blocker, ObjectId target, Side side,
                            double clearance) {
  const Rect goal = scene.goal_footprint(target);
  const Rect fp = scene.footprint(blocker);
  if (blocker == target || !overlaps(fp, goal)) {
    throw std::invalid_argument("object " + std::to_string(blocker) +
                                " does not block the goal of object " + std::to_string(target));
  }
  const double penetration = axis_extent(goal, side).far - axis_extent(fp, side).near;
  return std::max(0.0, penetration) + clearance;
}

bool corridor_clear(const Scene& scene, ObjectId blocker, Side side, double displacement,
                    std::span<const ObjectId> exclude) {
  const Rect corridor = sweep(scene.footprint(blocker), side, displacement);
  for (ObjectId j = 0; j < scene.size(); ++j) {
    if (j == blocker || std::find(exclude.begin(), exclude.end(), j) != exclude.end()) continue;
    if (overlaps(corridor, scene.footprint(j))) return false;
  }
  return true;
}

bool edge_safe(const Scene& scene, ObjectId blocker, Side side, double displacement, double margin) {
  const Rect post = translate(scene.footprint(blocker), direction(side) * displacement);
  return contains(shrink(scene.workspace(), margin), post);
}

std::optional<PushProposal> evaluate_side(const Scene& scene, ObjectId target, Side side,
                                          const PushConfig& cfg, PushCheckStats* stats) {
  if (stats) ++stats->side_evaluations;
  const auto blockers = blockers_of(scene, target);
  if (blockers.empty()) return std::nullopt;

  const ObjectId held[] = {target};
  const Vec2 dir = direction(side);
  PushProposal out{target, side, {}, {}, scene.goal_pose(target), cfg.clearance};
  std::vector<Rect> post_rects;
  double outermost_near = std::numeric_limits<double>::infinity();
  std::size_t checks = 0;

  for (ObjectId b : blockers) {
    ++checks;
    if (stats) ++stats->blocker_checks;
    const double d = blocker_displacement(scene, b, target, side, cfg.clearance);
    if (!edge_safe(scene, b, side, d, cfg.edge_margin)) return std::nullopt;
    if (!corridor_clear(scene, b, side, d, held)) return std::nullopt;
    // Blockers translate independently; their end poses must stay disjoint.
    const Rect post = translate(scene.footprint(b), dir * d);
    for (const Rect& other : post_rects) {
      if (overlaps(post, other)) return std::nullopt;
    }
    post_rects.push_back(post);
    out.blocker_moves.push_back({b, d});
    outermost_near = std::min(outermost_near, axis_extent(scene.footprint(b), side).near);
  }
  if (stats && checks > blockers.size()) ++stats->superlinear_sides;

  // p0: the target's leading face sits `clearance` behind the outermost blocker.
  const Rect goal_fp = scene.goal_footprint(target);
  const double lead = axis_extent(goal_fp, side).far - (outermost_near - cfg.clearance);
  out.pre_push = out.goal_pose - dir * lead;

  if (stats) ++stats->pose_validations;
  if (!placement_free(scene, target, out.pre_push)) return std::nullopt;
  // The target's own sweep, including the overshoot, may touch blockers only.
  const Rect approach = sweep(scene.footprint_at(target, out.pre_push), side, lead + cfg.clearance);
  if (!contains(scene.workspace(), approach)) return std::nullopt;
  for (ObjectId j = 0; j < scene.size(); ++j) {
    if (j == target || std::binary_search(blockers.begin(), blockers.end(), j)) continue;
    if (overlaps(approach, scene.footprint(j))) return std::nullopt;
  }
  return out;
}

std::optional<PushProposal> select_push(const Scene& scene, ObjectId target, const PushConfig& cfg,
                                        PushCheckStats* stats) {
  const auto blockers = blockers_of(scene, target);
  if (blockers.empty()) {
    throw std::invalid_argument("select_push: goal of object " + std::to_string(target) +
                                " has no blockers; use pick-and-place");
  }
  std::size_t sides = 0;
  std::optional<PushProposal> found;
  for (Side s : cfg.side_order) {
    ++sides;
    found = evaluate_side(scene, target, s, cfg, stats);
    if (found) break;
  }
  if (stats) {
    ++stats->calls;
    stats->blocker_total += blockers.size();
    stats->max_sides_per_call = std::max(stats->max_sides_per_call, sides);
  }
  return found;
}

PushProposal proposal_for(const Scene& scene, const PushPlace& action, const PushConfig& cfg) {
  scene.check_id(action.object);
  auto proposal = evaluate_side(scene, action.object, action.side, cfg);
  if (!proposal) {
    throw InfeasibleAction(InfeasibleAction::Reason::InadmissiblePush,
                           describe(action) + ": side is not admissible");
  }
  const Vec2 diff = proposal->pre_push - action.pre_push;
  if (std::abs(diff.x) > 1e-9 || std::abs(diff.y) > 1e-9) {
    throw InfeasibleAction(InfeasibleAction::Reason::InadmissiblePush,
                           describe(action) + ": pre-push pose does not match the admissible pose");
  }
  return *proposal;
}

std::optional<Vec2> sample_buffer_pose(const Scene& scene, ObjectId object, Rng& rng,
                                       std::size_t max_attempts) {
  const HalfDims half = scene.object(object).half;
  const Rect& ws = scene.workspace();
  if (ws.width() < 2.0 * half.a || ws.height() < 2.0 * half.b) return std::nullopt;

  std::vector<Rect> forbidden;
  for (ObjectId j = 0; j < scene.size(); ++j) {
    if (j != object) forbidden.push_back(scene.footprint(j));
    if (!is_at_goal(scene, j)) forbidden.push_back(scene.goal_footprint(j));
  }
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const Vec2 c{rng.uniform(ws.lo.x + half.a, ws.hi.x - half.a),
                 rng.uniform(ws.lo.y + half.b, ws.hi.y - half.b)};
    const Rect r = rect_from_center(c, half);
    if (!contains(ws, r)) continue;
    const bool clash = std::any_of(forbidden.begin(), forbidden.end(),
                                   [&](const Rect& f) { return overlaps(f, r); });
    if (!clash) return c;
  }
  return std::nullopt;
}

}  // namespace pplan
