#include "pplan/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace pplan {

namespace {

constexpr double kContactSlack = 1e-12;
constexpr double kEdgeInset = 0.001;
constexpr int kMaxResolvePasses = 64;

double along(Vec2 v, Side side) {
  const Vec2 d = direction(side);
  return v.x * d.x + v.y * d.y;
}

Vec2 perpendicular(Side side) {
  const Vec2 d = direction(side);
  return {-d.y, d.x};
}

bool cross_overlap(const Rect& a, const Rect& b, Side side) {
  const auto [alo, ahi] = cross_extent(a, side);
  const auto [blo, bhi] = cross_extent(b, side);
  return alo < bhi && blo < ahi;
}

std::vector<Rect> footprints(const Scene& scene, const Arrangement& arr) {
  std::vector<Rect> out;
  out.reserve(arr.size());
  for (ObjectId i = 0; i < arr.size(); ++i) out.push_back(scene.footprint_at(i, arr.poses[i]));
  return out;
}

// Moves the center of `half` so its footprint sits inside `ws` shrunk by the inset.
Vec2 clamp_inside(Vec2 c, HalfDims half, const Rect& ws) {
  const Rect inner = shrink(ws, kEdgeInset);
  auto clamp_axis = [](double v, double lo, double hi) {
    if (lo > hi) return (lo + hi) * 0.5;
    return std::clamp(v, lo, hi);
  };
  return {clamp_axis(c.x, inner.lo.x + half.a, inner.hi.x - half.a),
          clamp_axis(c.y, inner.lo.y + half.b, inner.hi.y - half.b)};
}

bool pose_free(const Scene& scene, const Arrangement& arr, ObjectId id, Vec2 c) {
  const Rect r = scene.footprint_at(id, c);
  if (!contains(scene.workspace(), r)) return false;
  for (ObjectId j = 0; j < arr.size(); ++j) {
    if (j != id && overlaps(r, scene.footprint_at(j, arr.poses[j]))) return false;
  }
  return true;
}

// Nearest free pose on a 2 mm grid of square rings around the current center.
// With `forward_of`, only poses not behind that start pose along `side` count.
bool relocate_nearest(const Scene& scene, Arrangement& arr, ObjectId id, Side side,
                      std::optional<Vec2> forward_of) {
  constexpr double step = 0.002;
  const Vec2 c = arr.poses[id];
  const Rect& ws = scene.workspace();
  const int rings = static_cast<int>(std::ceil(std::max(ws.width(), ws.height()) / step)) + 1;
  for (int r = 1; r <= rings; ++r) {
    for (int i = -r; i <= r; ++i) {
      for (int j = -r; j <= r; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != r) continue;
        const Vec2 cand{c.x + i * step, c.y + j * step};
        if (forward_of && along(cand - *forward_of, side) < 0.0) continue;
        if (pose_free(scene, arr, id, cand)) {
          arr.poses[id] = cand;
          return true;
        }
      }
    }
  }
  return false;
}

bool relocate_forward_first(const Scene& scene, Arrangement& arr, ObjectId id, Side side, Vec2 start) {
  return relocate_nearest(scene, arr, id, side, start) ||
         relocate_nearest(scene, arr, id, side, std::nullopt);
}

// Separates overlaps involving `movable` objects by translating them along
// `side`'s axis, never behind `start` poses when a forward move exists.
void resolve_overlaps(const Scene& scene, Arrangement& arr, const std::vector<ObjectId>& movable,
                      Side side, const Arrangement& start) {
  const Vec2 dir = direction(side);
  for (int pass = 0; pass < kMaxResolvePasses; ++pass) {
    bool any = false;
    for (ObjectId i : movable) {
      for (ObjectId j = 0; j < arr.size(); ++j) {
        if (j == i) continue;
        const Rect ri = scene.footprint_at(i, arr.poses[i]);
        const Rect rj = scene.footprint_at(j, arr.poses[j]);
        if (!overlaps(ri, rj)) continue;
        any = true;
        const Extent ei = axis_extent(ri, side);
        const Extent ej = axis_extent(rj, side);
        const double forward = ej.far - ei.near;
        const double backward = ei.far - ej.near;
        const double progress = along(arr.poses[i] - start.poses[i], side);
        const Vec2 fwd_pose = arr.poses[i] + dir * forward;
        const Vec2 back_pose = arr.poses[i] - dir * backward;
        const bool fwd_ok = contains(scene.workspace(), scene.footprint_at(i, fwd_pose));
        const bool back_ok = backward <= progress &&
                             contains(scene.workspace(), scene.footprint_at(i, back_pose));
        if (back_ok && (!fwd_ok || backward < forward)) {
          arr.poses[i] = back_pose;
        } else if (fwd_ok) {
          arr.poses[i] = fwd_pose;
        } else {
          relocate_forward_first(scene, arr, i, side, start.poses[i]);
        }
      }
    }
    if (!any) return;
  }
  for (ObjectId i : movable) {
    if (!pose_free(scene, arr, i, arr.poses[i]) &&
        !relocate_forward_first(scene, arr, i, side, start.poses[i])) {
      throw SimulationError("cannot settle object " + std::to_string(i) + ": no free space");
    }
  }
}

}  // namespace

void NoiseConfig::validate() const {
  if (!(lateral_sigma >= 0.0) || !(depth_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigmas must be >= 0");
  }
}

std::string_view to_string(SimEventKind kind) {
  switch (kind) {
    case SimEventKind::Pushed: return "Pushed";
    case SimEventKind::SecondaryContact: return "SecondaryContact";
    case SimEventKind::LeftTable: return "LeftTable";
  }
  return "?";
}

bool SimResult::has(SimEventKind kind) const {
  return std::any_of(events.begin(), events.end(), [&](const SimEvent& e) { return e.kind == kind; });
}

PushOutcome push_forward(const Scene& scene, ObjectId target, Side side, Vec2 from, Vec2 to) {
  scene.check_id(target);
  const Vec2 delta = to - from;
  const double travel = along(delta, side);
  const double cross = is_horizontal(side) ? delta.y : delta.x;
  if (std::abs(cross) > 1e-9 || travel < -1e-12) {
    throw std::invalid_argument("push_forward: from/to must differ only along the push direction");
  }

  const std::size_t n = scene.size();
  std::vector<Rect> rects = footprints(scene, scene.current());
  rects[target] = scene.footprint_at(target, from);

  std::vector<double> disp(n, 0.0);
  std::vector<int> layer(n, 0);
  std::vector<ObjectId> pushers{target};
  disp[target] = std::max(0.0, travel);

  std::vector<ObjectId> order;
  for (ObjectId i = 0; i < n; ++i) {
    if (i != target) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) {
    return axis_extent(rects[a], side).near < axis_extent(rects[b], side).near;
  });

  // Processing by ascending near face guarantees every pusher of an object is final first.
  for (ObjectId o : order) {
    const double near = axis_extent(rects[o], side).near;
    double best = 0.0;
    int via_layer = 0;
    for (ObjectId p : pushers) {
      if (!cross_overlap(rects[p], rects[o], side)) continue;
      const double gap = near - axis_extent(rects[p], side).far;
      if (gap < -kContactSlack) continue;
      const double push = disp[p] - std::max(0.0, gap);
      if (push > best) {
        best = push;
        via_layer = layer[p];
      }
    }
    if (best > 0.0) {
      disp[o] = best;
      layer[o] = via_layer + 1;
      pushers.push_back(o);
    }
  }

  PushOutcome out{scene.current(), {}};
  const Vec2 dir = direction(side);
  out.arrangement.poses[target] = to;
  for (ObjectId o : order) {
    if (layer[o] == 0) continue;
    out.arrangement.poses[o] = scene.pose(o) + dir * disp[o];
    out.events.push_back({layer[o] == 1 ? SimEventKind::Pushed : SimEventKind::SecondaryContact, o,
                          "moved " + std::to_string(disp[o]) + " m " + std::string(to_string(side))});
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const SimEvent& a, const SimEvent& b) { return a.object < b.object; });
  return out;
}

namespace {

void emit_left_table(const Scene& scene, Arrangement& arr, const std::vector<ObjectId>& moved,
                     std::vector<SimEvent>& events) {
  for (ObjectId o : moved) {
    const Rect r = scene.footprint_at(o, arr.poses[o]);
    if (contains(scene.workspace(), r)) continue;
    events.push_back({SimEventKind::LeftTable, o, "pushed past the table edge"});
    arr.poses[o] = clamp_inside(arr.poses[o], scene.object(o).half, scene.workspace());
  }
}

SimResult simulate_push(const Scene& scene, const PushPlace& action, const NoiseConfig& noise,
                        Rng& rng, const PushConfig& push) {
  const ObjectId target = action.object;
  if (!placement_free(scene, target, action.pre_push)) {
    throw SimulationError(describe(Action{action}) + ": pre-push pose is occupied or off the table");
  }
  const Vec2 dir = direction(action.side);
  const Vec2 goal = scene.goal_pose(target);
  const Vec2 sweep_end = goal + dir * push.clearance;
  const Vec2 travel = sweep_end - action.pre_push;
  const double perp = is_horizontal(action.side) ? travel.y : travel.x;
  if (std::abs(perp) > 1e-9 || along(travel, action.side) < 0.0) {
    throw SimulationError(describe(Action{action}) + ": pre-push pose is not aligned with the goal");
  }

  PushOutcome pushed = push_forward(scene, target, action.side, action.pre_push, sweep_end);
  Arrangement arr = std::move(pushed.arrangement);
  arr.poses[target] = goal;

  const auto declared = blockers_of(scene, target);
  std::vector<ObjectId> moved;
  for (auto& e : pushed.events) {
    moved.push_back(e.object);
    e.kind = std::binary_search(declared.begin(), declared.end(), e.object) ? SimEventKind::Pushed
                                                                             : SimEventKind::SecondaryContact;
  }
  std::sort(moved.begin(), moved.end());

  if (noise.enabled) {
    const Vec2 lateral = perpendicular(action.side);
    for (ObjectId o : moved) {
      double depth = rng.uniform(-noise.depth_sigma, noise.depth_sigma);
      const double side_drift = rng.uniform(-noise.lateral_sigma, noise.lateral_sigma);
      // Drift never takes an object back past its starting pose.
      depth = std::max(depth, -along(arr.poses[o] - scene.pose(o), action.side));
      arr.poses[o] = arr.poses[o] + dir * depth + lateral * side_drift;
    }
  }

  emit_left_table(scene, arr, moved, pushed.events);
  // Anything still under the settled target must make room as well.
  std::vector<ObjectId> movable = moved;
  const Rect settled = scene.footprint_at(target, goal);
  for (ObjectId j = 0; j < arr.size(); ++j) {
    if (j != target && overlaps(settled, scene.footprint_at(j, arr.poses[j])) &&
        !std::binary_search(moved.begin(), moved.end(), j)) {
      movable.push_back(j);
    }
  }
  resolve_overlaps(scene, arr, movable, action.side, scene.current());
  return {scene.with_current(std::move(arr)), std::move(pushed.events)};
}

SimResult simulate_pick(const Scene& scene, const PickPlace& action, const NoiseConfig& noise,
                        Rng& rng) {
  const ObjectId id = action.object;
  if (!placement_free(scene, id, action.destination)) {
    throw SimulationError(describe(Action{action}) + ": destination is occupied or off the table");
  }
  Arrangement arr = scene.current();
  arr.poses[id] = action.destination;
  if (noise.enabled && noise.perturb_placements) {
    const Vec2 drift{rng.uniform(-noise.depth_sigma, noise.depth_sigma),
                     rng.uniform(-noise.lateral_sigma, noise.lateral_sigma)};
    arr.poses[id] = clamp_inside(arr.poses[id] + drift, scene.object(id).half, scene.workspace());
    if (!pose_free(scene, arr, id, arr.poses[id])) arr.poses[id] = action.destination;
  }
  return {scene.with_current(std::move(arr)), {}};
}

}  // namespace

SimResult simulate(const Scene& scene, const Action& action, const NoiseConfig& noise, Rng& rng,
                   const PushConfig& push) {
  if (action_object(action) >= scene.size()) {
    throw SimulationError("invalid object id " + std::to_string(action_object(action)));
  }
  if (const auto* pp = std::get_if<PickPlace>(&action)) return simulate_pick(scene, *pp, noise, rng);
  return simulate_push(scene, std::get<PushPlace>(action), noise, rng, push);
}

}  // namespace pplan
