#pragma once

// Deterministic quasi-static 2D forward model.
//
// Pushes are resolved in one dimension along the push axis: once a pushed
// object's face meets the pusher's leading face it translates with it, and
// contact propagates transitively. There is no rotation and no restitution.
// Optional uniform drift perturbs pushed objects to exercise replanning.

#include <stdexcept>
#include <string>
#include <vector>

#include "pplan/primitives.hpp"
#include "pplan/random.hpp"
#include "pplan/scene.hpp"

namespace pplan {

struct NoiseConfig {
  bool enabled = false;
  /// Half-width of the uniform drift perpendicular to the push.
  double lateral_sigma = 0.003;
  /// Half-width of the uniform drift along the push.
  double depth_sigma = 0.002;
  /// Also perturb pick-and-place destinations (with the same half-widths).
  bool perturb_placements = false;

  void validate() const;
};

enum class SimEventKind { Pushed, SecondaryContact, LeftTable };

std::string_view to_string(SimEventKind kind);

struct SimEvent {
  SimEventKind kind{SimEventKind::Pushed};
  ObjectId object{0};
  std::string detail;

  bool is_failure() const { return kind != SimEventKind::Pushed; }
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PushOutcome {
  Arrangement arrangement;
  std::vector<SimEvent> events;
};

/// Advances `target` from `from` to `to` along `side`. Objects touched by the
/// pusher emit Pushed; objects moved only through other objects emit
/// SecondaryContact. The result may leave the workspace; it is not clamped.
/// Throws std::invalid_argument when from/to are not aligned along the side's
/// axis or the travel is negative.
PushOutcome push_forward(const Scene& scene, ObjectId target, Side side, Vec2 from, Vec2 to);

struct SimResult {
  Scene scene;
  std::vector<SimEvent> events;

  bool has(SimEventKind kind) const;
};

/// Executes an action. PushPlace sweeps from p0 to the proposal's sweep end
/// and settles the target on its goal. Moved objects in the goal's blocker
/// set are reported as Pushed and all others as SecondaryContact. Objects
/// pushed off the table emit LeftTable and are clamped 1 mm inside the edge.
/// Residual overlaps are separated along the push axis. Throws SimulationError
/// when the action cannot start (bad id, pre-push pose occupied, PickPlace
/// destination taken).
SimResult simulate(const Scene& scene, const Action& action, const NoiseConfig& noise, Rng& rng,
                   const PushConfig& push = {});

}  // namespace pplan
