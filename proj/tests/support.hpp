#pragma once

// Shared fixtures and brute-force oracles. The oracles deliberately avoid the
// library's predicates so they can catch mistakes in them.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "pplan/bench.hpp"
#include "pplan/geometry.hpp"
#include "pplan/primitives.hpp"
#include "pplan/scene.hpp"

namespace pplan::testing {

inline ObjectSpec box(ObjectId id, double a, double b) { return {id, {a, b}, {}}; }

/// Two equal squares that must trade places.
inline Scene swap_scene() {
  return Scene({{0, 0}, {1, 1}}, {box(0, 0.05, 0.05), box(1, 0.05, 0.05)}, {{{0.4, 0.5}, {0.6, 0.5}}},
               {{{0.6, 0.5}, {0.4, 0.5}}});
}

/// Blocker 1 sits on target 0's goal and every push direction runs into a
/// neighbour 2 cm away, so any push would start a contact chain.
inline Scene chain_scene() {
  std::vector<ObjectSpec> objs;
  for (ObjectId i = 0; i < 6; ++i) objs.push_back(box(i, 0.05, 0.05));
  return Scene({{0, 0}, {1, 1}}, objs,
               {{{0.15, 0.15}, {0.5, 0.5}, {0.62, 0.5}, {0.38, 0.5}, {0.5, 0.62}, {0.5, 0.38}}},
               {{{0.5, 0.5}, {0.85, 0.85}, {0.62, 0.5}, {0.38, 0.5}, {0.5, 0.62}, {0.5, 0.38}}});
}

/// Goal next to the right edge of a narrow table: Right/Up/Down would push the
/// blocker off, and there is no room for the target behind it on the Left.
inline Scene edge_scene() {
  return Scene({{0, 0}, {0.6, 0.2}}, {box(0, 0.05, 0.05), box(1, 0.05, 0.05)}, {{{0.1, 0.1}, {0.5, 0.1}}},
               {{{0.5, 0.1}, {0.3, 0.1}}});
}

inline double intersection_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.hi.x, b.hi.x) - std::max(a.lo.x, b.lo.x);
  const double h = std::min(a.hi.y, b.hi.y) - std::max(a.lo.y, b.lo.y);
  return (w > 0 && h > 0) ? w * h : 0.0;
}

inline bool inside(const Rect& outer, const Rect& inner, double slack = 1e-12) {
  return inner.lo.x >= outer.lo.x - slack && inner.lo.y >= outer.lo.y - slack && inner.hi.x <= outer.hi.x + slack &&
         inner.hi.y <= outer.hi.y + slack;
}

inline Rect box_at(Vec2 c, HalfDims h) { return {{c.x - h.a, c.y - h.b}, {c.x + h.a, c.y + h.b}}; }

inline Rect random_rect(Rng& rng, double span = 2.0) {
  const double x0 = rng.uniform(-span, span), y0 = rng.uniform(-span, span);
  return {{x0, y0}, {x0 + rng.uniform(0.01, span), y0 + rng.uniform(0.01, span)}};
}

/// Blockers recomputed with the intersection-area oracle.
inline std::vector<ObjectId> oracle_blockers(const Scene& s, ObjectId target) {
  std::vector<ObjectId> out;
  const Rect g = box_at(s.goal_pose(target), s.object(target).half);
  for (ObjectId j = 0; j < s.size(); ++j) {
    if (j != target && intersection_area(box_at(s.pose(j), s.object(j).half), g) > 0) out.push_back(j);
  }
  return out;
}

struct SweepVerdict {
  bool ok = true;
  bool start_free = true;
  bool chain_contact = false;
  bool non_blocker_moved = false;
  bool left_workspace = false;
  bool edge_margin_violated = false;
  bool goal_still_blocked = false;
  std::vector<Vec2> final_poses;
};

/// Discretized push: the held target is lowered at `from` and stepped toward
/// `to` in increments of at most `step`. Anything the target's footprint
/// penetrates is shoved to face contact. Objects moved by anything other than
/// the target count as chain contacts.
inline SweepVerdict oracle_sweep(const Scene& s, ObjectId target, Side side, Vec2 from, Vec2 to,
                                 const std::vector<ObjectId>& blockers, double edge_margin, double step = 1e-3) {
  SweepVerdict v;
  const std::size_t n = s.size();
  std::vector<Vec2> pos(s.current().poses);
  const Vec2 dir = direction(side);
  const HalfDims th = s.object(target).half;
  const Rect ws = s.workspace();

  auto rect_of = [&](ObjectId j) { return box_at(pos[j], s.object(j).half); };

  pos[target] = from;
  if (!inside(ws, rect_of(target))) v.start_free = false;
  for (ObjectId j = 0; j < n; ++j) {
    if (j != target && intersection_area(rect_of(target), rect_of(j)) > 1e-15) v.start_free = false;
  }
  if (!v.start_free) {
    v.ok = false;
    return v;
  }

  const double travel = std::abs((to - from).x) + std::abs((to - from).y);
  const int steps = std::max(1, static_cast<int>(std::ceil(travel / step)));
  std::vector<bool> moved(n, false);
  for (int k = 1; k <= steps; ++k) {
    const double t = travel * k / steps;
    pos[target] = from + dir * t;
    if (!inside(ws, rect_of(target))) v.left_workspace = true;
    // Shove penetrated objects out of the target's front; then resolve any
    // object-object penetration the shove caused.
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (ObjectId pusher = 0; pusher < n; ++pusher) {
        if (pusher != target && !moved[pusher]) continue;
        for (ObjectId j = 0; j < n; ++j) {
          if (j == pusher || j == target) continue;
          const Rect a = rect_of(pusher), b = rect_of(j);
          if (intersection_area(a, b) <= 1e-15) continue;
          double shift = 0;
          switch (side) {
            case Side::Right: shift = a.hi.x - b.lo.x; break;
            case Side::Left: shift = b.hi.x - a.lo.x; break;
            case Side::Up: shift = a.hi.y - b.lo.y; break;
            case Side::Down: shift = b.hi.y - a.lo.y; break;
          }
          if (shift <= 0) continue;
          pos[j] = pos[j] + dir * shift;
          moved[j] = true;
          changed = true;
          if (pusher != target) v.chain_contact = true;
          if (!inside(ws, rect_of(j))) v.left_workspace = true;
        }
      }
      if (!changed) break;
    }
  }
  const Rect inner = shrink(ws, edge_margin);
  for (ObjectId j = 0; j < n; ++j) {
    if (j == target || !moved[j]) continue;
    if (std::find(blockers.begin(), blockers.end(), j) == blockers.end()) v.non_blocker_moved = true;
    if (!inside(inner, rect_of(j), 1e-9)) v.edge_margin_violated = true;
  }
  const Rect goal = box_at(s.goal_pose(target), th);
  for (ObjectId j = 0; j < n; ++j) {
    if (j != target && intersection_area(goal, rect_of(j)) > 1e-15) v.goal_still_blocked = true;
  }
  v.ok = !v.chain_contact && !v.non_blocker_moved && !v.left_workspace && !v.edge_margin_violated &&
         !v.goal_still_blocked;
  pos[target] = s.goal_pose(target);
  v.final_poses = pos;
  return v;
}

/// Independent construction of p0 for one side: the target's leading face
/// sits `clearance` behind the blocker face nearest the pusher.
inline Vec2 oracle_pre_push(const Scene& s, ObjectId target, Side side, double clearance) {
  const Vec2 dir = direction(side);
  const Vec2 goal = s.goal_pose(target);
  auto along = [&](Vec2 p) { return p.x * dir.x + p.y * dir.y; };
  auto half_along = [&](ObjectId j) { return is_horizontal(side) ? s.object(j).half.a : s.object(j).half.b; };
  double outer_near = INFINITY;
  for (ObjectId b : oracle_blockers(s, target)) outer_near = std::min(outer_near, along(s.pose(b)) - half_along(b));
  const double lead_goal = along(goal) + half_along(target);
  return goal - dir * (lead_goal - (outer_near - clearance));
}

/// Whether the oracle accepts pushing `target` from `side`: the sweep ends
/// `clearance` past the goal's far face.
inline bool oracle_side_ok(const Scene& s, ObjectId target, Side side, const PushConfig& cfg) {
  const auto blockers = oracle_blockers(s, target);
  if (blockers.empty()) return false;
  const Vec2 p0 = oracle_pre_push(s, target, side, cfg.clearance);
  const Vec2 end = s.goal_pose(target) + direction(side) * cfg.clearance;
  return oracle_sweep(s, target, side, p0, end, blockers, cfg.edge_margin).ok;
}

/// Random scenes from the benchmark generator on a tighter table, so goals
/// are blocked often. The table grows if the generator's area check needs it.
inline Scene random_scene(std::size_t n, std::uint64_t seed, double table = 0.7) {
  BenchConfig cfg;
  const double needed = std::sqrt(static_cast<double>(n) * 4 * cfg.size_max * cfg.size_max / 0.4) + 1e-3;
  table = std::max(table, needed);
  cfg.workspace = {{0, 0}, {table, table}};
  Rng rng(seed);
  return generate_scene(n, cfg, rng);
}

}  // namespace pplan::testing
