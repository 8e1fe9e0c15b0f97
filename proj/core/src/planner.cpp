#include "pplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace pplan {

void PlannerConfig::validate() const {
  if (budget.kind == Budget::Kind::Expansions && budget.expansions == 0) {
    throw std::invalid_argument("expansion budget must be positive");
  }
  if (budget.kind == Budget::Kind::WallClock && !(budget.seconds > 0.0)) {
    throw std::invalid_argument("time budget must be positive");
  }
  if (!(exploration_c >= 0.0)) throw std::invalid_argument("exploration_c must be >= 0");
  if (buffer_max_attempts == 0) throw std::invalid_argument("buffer_max_attempts must be positive");
  if (!(cost.lambda > 0.0) || !(cost.pick >= 0.0)) {
    throw std::invalid_argument("cost lambda must be > 0 and pick >= 0");
  }
  if (depth_per_object == 0) throw std::invalid_argument("depth_per_object must be positive");
  if (!(widening_exponent >= 0.0 && widening_exponent <= 1.0)) {
    throw std::invalid_argument("widening_exponent must be in [0, 1]");
  }
  push.validate();
}

ObjectId sample_unsatisfied_object(const Scene& scene, Rng& rng) {
  std::vector<ObjectId> open;
  for (ObjectId i = 0; i < scene.size(); ++i) {
    if (!is_at_goal(scene, i)) open.push_back(i);
  }
  if (open.empty()) throw std::invalid_argument("every object is already at its goal");
  return open[rng.index(open.size())];
}

std::optional<Action> recommend_action(const Scene& scene, ObjectId object, const PlannerConfig& cfg,
                                       Rng& rng, PushCheckStats* stats) {
  if (is_at_goal(scene, object)) {
    throw std::invalid_argument("object " + std::to_string(object) + " is already at its goal");
  }
  const auto blockers = blockers_of(scene, object);
  if (blockers.empty()) return PickPlace{object, scene.goal_pose(object)};

  if (cfg.push_enabled) {
    if (auto proposal = select_push(scene, object, cfg.push, stats)) return proposal->action();
  }

  const ObjectId blocker = blockers[rng.index(blockers.size())];
  if (goal_region_free(scene, blocker)) return PickPlace{blocker, scene.goal_pose(blocker)};
  if (auto buffer = sample_buffer_pose(scene, blocker, rng, cfg.buffer_max_attempts)) {
    return PickPlace{blocker, *buffer};
  }
  return std::nullopt;
}

SearchTree::SearchTree(Scene root, PlannerConfig cfg, PushCheckStats* stats)
    : cfg_(std::move(cfg)), stats_(stats), depth_cap_(cfg_.depth_per_object * root.size()) {
  SearchNode n{std::move(root), std::nullopt, std::nullopt, {}, {}, {}, 0, 0.0, 0, 0, 0, false};
  n.ee = home_state(n.state);
  n.satisfied = satisfied_count(n.state);
  n.visit_count = 1;
  n.reward_sum = static_cast<double>(n.satisfied);
  nodes_.push_back(std::move(n));
  if (nodes_.front().satisfied == nodes_.front().state.size()) terminal_ = 0;
}

bool SearchTree::expandable(const SearchNode& n) const {
  const std::size_t open = n.state.size() - n.satisfied;
  if (open == 0 || n.depth >= depth_cap_) return false;
  // Progressive widening: a fresh leaf is expanded on first arrival and a node
  // may hold floor(visits^alpha) children, capped by twice its open objects.
  const auto width = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::pow(static_cast<double>(n.visit_count), cfg_.widening_exponent)));
  return n.children.size() < std::min(width, 2 * open) && n.attempts < 4 * open + 4;
}

std::optional<std::size_t> SearchTree::select_child(const SearchNode& n) const {
  const double scale = static_cast<double>(std::max<std::size_t>(1, n.state.size()));
  const double log_parent = std::log(static_cast<double>(std::max<std::size_t>(1, n.visit_count)));
  std::optional<std::size_t> best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c : n.children) {
    const SearchNode& child = nodes_[c];
    if (child.exhausted) continue;
    const double visits = static_cast<double>(child.visit_count);
    const double score =
        child.reward_sum / visits / scale + cfg_.exploration_c * std::sqrt(log_parent / visits);
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

void SearchTree::backpropagate(std::size_t from, double reward) {
  std::optional<std::size_t> cur = from;
  while (cur) {
    SearchNode& n = nodes_[*cur];
    ++n.visit_count;
    n.reward_sum += reward;
    cur = n.parent;
  }
}

void SearchTree::refresh_exhausted(std::size_t from) {
  std::optional<std::size_t> cur = from;
  while (cur) {
    SearchNode& n = nodes_[*cur];
    if (expandable(n)) return;
    for (std::size_t c : n.children) {
      if (!nodes_[c].exhausted) return;
    }
    n.exhausted = true;
    cur = n.parent;
  }
}

SearchTree::StepResult SearchTree::step(Rng& rng) {
  StepResult result;
  if (terminal_ || exhausted()) return result;

  std::size_t cur = 0;
  while (!expandable(nodes_[cur])) {
    const auto next = select_child(nodes_[cur]);
    if (!next) {
      refresh_exhausted(cur);
      return result;
    }
    cur = *next;
  }

  ++nodes_[cur].attempts;
  const Scene& state = nodes_[cur].state;
  const ObjectId object = sample_unsatisfied_object(state, rng);
  const auto action = recommend_action(state, object, cfg_, rng, stats_);
  if (!action) {
    refresh_exhausted(cur);
    return result;
  }

  SearchNode child{apply_action(state, *action, cfg_.push), cur, *action, {}, {}, {}, 0, 0.0,
                   nodes_[cur].depth + 1, 0, 0, false};
  std::tie(child.incoming_cost, child.ee) =
      action_cost(state, *action, nodes_[cur].ee, cfg_.cost, cfg_.push);
  child.satisfied = satisfied_count(child.state);
  const std::size_t index = nodes_.size();
  const bool done = child.satisfied == child.state.size();
  nodes_.push_back(std::move(child));
  nodes_[cur].children.push_back(index);

  result.expanded = true;
  result.node = index;
  result.reward = static_cast<double>(nodes_[index].satisfied);
  backpropagate(index, result.reward);
  if (done) {
    terminal_ = index;
    result.terminal = true;
  } else {
    refresh_exhausted(index);
  }
  return result;
}

Plan SearchTree::extract_plan(std::size_t leaf) const {
  Plan p;
  std::optional<std::size_t> cur = leaf;
  while (cur && nodes_[*cur].parent) {
    p.actions.push_back(*nodes_[*cur].incoming_action);
    p.costs.push_back(nodes_[*cur].incoming_cost);
    cur = nodes_[*cur].parent;
  }
  std::reverse(p.actions.begin(), p.actions.end());
  std::reverse(p.costs.begin(), p.costs.end());
  for (const auto& c : p.costs) p.total += c.cost();
  return p;
}

SearchResult search(const Scene& scene, const PlannerConfig& cfg, PushCheckStats* stats) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  SearchResult out;
  SearchTree tree(scene, cfg, stats);
  Rng rng(cfg.seed);
  while (!tree.terminal() && !tree.exhausted()) {
    if (cfg.budget.kind == Budget::Kind::Expansions) {
      if (out.iterations >= cfg.budget.expansions) break;
    } else if (elapsed() >= cfg.budget.seconds) {
      break;
    }
    tree.step(rng);
    ++out.iterations;
  }
  if (auto t = tree.terminal()) out.plan = tree.extract_plan(*t);
  out.nodes = tree.size();
  out.seconds = elapsed();
  return out;
}

}  // namespace pplan
