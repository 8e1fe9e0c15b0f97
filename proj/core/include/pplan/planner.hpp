#pragma once

// Budget-bounded Monte Carlo Tree Search over arrangements.
//
// Each iteration descends by UCT to an expandable node, samples an object
// that is not at its goal, asks the action recommender for one primitive and
// adds the resulting state as a child. The reward of a state is the number
// of objects within tolerance; the search stops at the first state where all
// objects are, and the plan is the path back to the root.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pplan/metrics.hpp"
#include "pplan/primitives.hpp"
#include "pplan/random.hpp"
#include "pplan/scene.hpp"

namespace pplan {

struct Budget {
  enum class Kind { Expansions, WallClock };

  Kind kind = Kind::Expansions;
  std::size_t expansions = 5000;
  double seconds = 2.0;

  static Budget of_expansions(std::size_t n) { return {Kind::Expansions, n, 0.0}; }
  static Budget of_seconds(double s) { return {Kind::WallClock, 0, s}; }
};

struct PlannerConfig {
  Budget budget;
  double exploration_c = std::sqrt(2.0);
  bool push_enabled = true;
  PushConfig push;
  std::size_t buffer_max_attempts = 100;
  std::uint64_t seed = 0;
  CostModel cost;
  /// Tree depth cap is this many actions per object.
  std::size_t depth_per_object = 4;
  /// A node may hold floor(visits^widening_exponent) children (at least one).
  double widening_exponent = 0.25;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct SearchNode {
  Scene state;
  std::optional<std::size_t> parent;
  std::optional<Action> incoming_action;
  CostBreakdown incoming_cost;
  EEState ee;
  std::vector<std::size_t> children;
  std::size_t visit_count = 0;
  double reward_sum = 0.0;
  std::size_t depth = 0;
  std::size_t attempts = 0;
  std::size_t satisfied = 0;
  bool exhausted = false;
};

/// Uniform over objects not within tolerance of their goal. Throws
/// std::invalid_argument when every object is at its goal.
ObjectId sample_unsatisfied_object(const Scene& scene, Rng& rng);

/// Direct placement when the goal is free; push-placement when blocked and an
/// admissible push exists; otherwise clear a random blocker to its own goal or
/// to a buffer. Returns nullopt when buffer sampling fails. Throws
/// std::invalid_argument when `object` is already at its goal.
std::optional<Action> recommend_action(const Scene& scene, ObjectId object, const PlannerConfig& cfg,
                                       Rng& rng, PushCheckStats* stats = nullptr);

class SearchTree {
 public:
  struct StepResult {
    bool expanded = false;
    bool terminal = false;
    std::optional<std::size_t> node;
    double reward = 0.0;
  };

  SearchTree(Scene root, PlannerConfig cfg, PushCheckStats* stats = nullptr);

  /// One select / expand / evaluate / backpropagate iteration.
  StepResult step(Rng& rng);

  const SearchNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }
  std::optional<std::size_t> terminal() const { return terminal_; }
  /// True when no node can be expanded any more.
  bool exhausted() const { return nodes_.front().exhausted; }

  /// Backtracks from `leaf` to the root.
  Plan extract_plan(std::size_t leaf) const;

 private:
  bool expandable(const SearchNode& n) const;
  std::optional<std::size_t> select_child(const SearchNode& n) const;
  void backpropagate(std::size_t from, double reward);
  void refresh_exhausted(std::size_t from);

  PlannerConfig cfg_;
  PushCheckStats* stats_;
  std::vector<SearchNode> nodes_;
  std::optional<std::size_t> terminal_;
  std::size_t depth_cap_;
};

struct SearchResult {
  std::optional<Plan> plan;
  std::size_t iterations = 0;
  std::size_t nodes = 0;
  double seconds = 0.0;
};

SearchResult search(const Scene& scene, const PlannerConfig& cfg, PushCheckStats* stats = nullptr);

inline std::optional<Plan> plan(const Scene& scene, const PlannerConfig& cfg) {
  return search(scene, cfg).plan;
}

}  // namespace pplan
