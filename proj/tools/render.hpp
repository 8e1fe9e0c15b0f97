#pragma once

// Deterministic SVG drawings of scenes, plan frames and bench summaries.

#include <string>
#include <vector>

#include "pplan/bench.hpp"
#include "pplan/metrics.hpp"
#include "pplan/scene.hpp"

namespace pplan::cli {

struct RenderStyle {
  bool show_goals = true;
  bool show_gripper = false;
  double scale = 500.0;  // pixels per meter
};

/// Filled rects for current footprints, dashed unfilled rects for goals.
/// `grasped` draws the gripper marker on that object when show_gripper is set;
/// `arrows` draws one leg per planned action.
std::string render_scene(const Scene& scene, const RenderStyle& style, std::optional<ObjectId> grasped = {},
                         const std::vector<Action>& arrows = {});

/// One drawing per state of the plan replay: the start, then after each action.
std::vector<std::string> render_frames(const Scene& start, const Plan& plan, const RenderStyle& style,
                                       const PushConfig& push = {});

/// Grouped bar charts of mean cost and mean actions per N with std error bars.
std::string render_summary(const Summary& summary);

std::string color_for(const ObjectSpec& object);

}  // namespace pplan::cli
