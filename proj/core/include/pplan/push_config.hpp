#pragma once

#include <array>

#include "pplan/geometry.hpp"

namespace pplan {

/// Tunables of the push-placement admissibility test.
struct PushConfig {
  /// Gap kept between the pusher and the outermost blocker at the pre-push
  /// pose, and between the goal footprint and each blocker after the push.
  double clearance = 0.005;
  /// Blockers must end inside the workspace shrunk by this margin.
  double edge_margin = 0.010;
  std::array<Side, 4> side_order = kAllSides;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

}  // namespace pplan
