#include "pplan/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pplan {

namespace {

// Reads fields of one JSON object while tracking its path for diagnostics.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const Json& at(const char* key) const {
    if (!j_.contains(key)) throw InputError("missing field '" + child(key) + "'");
    return j_.at(key);
  }

  double number(const char* key) const { return as_number(at(key), child(key)); }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::uint64_t uint(const char* key) const { return as_uint(at(key), child(key)); }
  std::uint64_t uint(const char* key, std::uint64_t fallback) const {
    return has(key) ? uint(key) : fallback;
  }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) throw InputError("field '" + child(key) + "': expected true or false");
    return v.get<bool>();
  }

  std::string string(const char* key) const {
    const Json& v = at(key);
    if (!v.is_string()) throw InputError("field '" + child(key) + "': expected a string");
    return v.get<std::string>();
  }

  const Json& array(const char* key) const {
    const Json& v = at(key);
    if (!v.is_array()) throw InputError("field '" + child(key) + "': expected an array");
    return v;
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("field '" + (path_.empty() ? std::string("<root>") : path_) + "': " + what);
  }

  static double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw InputError("field '" + path + "': expected a number");
    return v.get<double>();
  }
  static std::uint64_t as_uint(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw InputError("field '" + path + "': expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

 private:
  const Json& j_;
  std::string path_;
};

Vec2 vec_from(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw InputError("field '" + path + "': expected [x, y]");
  return {Reader::as_number(v[0], path + "[0]"), Reader::as_number(v[1], path + "[1]")};
}

Json vec_json(Vec2 v) { return Json::array({v.x, v.y}); }

Rect rect_from(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) throw InputError("field '" + path + "': expected [x0, y0, x1, y1]");
  Rect r{{Reader::as_number(v[0], path + "[0]"), Reader::as_number(v[1], path + "[1]")},
         {Reader::as_number(v[2], path + "[2]"), Reader::as_number(v[3], path + "[3]")}};
  if (!r.valid()) throw InputError("field '" + path + "': expected x0 <= x1 and y0 <= y1");
  return r;
}

Arrangement arrangement_from(const Json& v, const std::string& path) {
  if (!v.is_array()) throw InputError("field '" + path + "': expected an array of [x, y]");
  Arrangement a;
  for (std::size_t i = 0; i < v.size(); ++i) {
    a.poses.push_back(vec_from(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return a;
}

Json arrangement_json(const Arrangement& a) {
  Json out = Json::array();
  for (Vec2 p : a.poses) out.push_back(vec_json(p));
  return out;
}

Side side_from(const Json& v, const std::string& path) {
  if (!v.is_string()) throw InputError("field '" + path + "': expected a side name");
  try {
    return side_from_string(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError("field '" + path + "': " + e.what());
  }
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string fixed6(double v) {
  std::string s = format("%.6f", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON: " + e.what());
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text;
  if (!out) throw InputError(path.string() + ": write failed");
}

Json to_json(const Scene& scene) {
  const Rect& w = scene.workspace();
  Json objects = Json::array();
  for (const auto& o : scene.objects()) {
    Json jo;
    jo["a"] = o.half.a;
    jo["b"] = o.half.b;
    if (o.color) jo["color"] = *o.color;
    objects.push_back(std::move(jo));
  }
  Json j;
  j["workspace"] = Json::array({w.lo.x, w.lo.y, w.hi.x, w.hi.y});
  j["objects"] = std::move(objects);
  j["start"] = arrangement_json(scene.current());
  j["goal"] = arrangement_json(scene.goal());
  j["epsilon"] = scene.tolerance();
  return j;
}

Scene scene_from_json(const Json& j) {
  Reader r(j, "");
  const Rect ws = rect_from(r.at("workspace"), "workspace");
  const Json& objs = r.array("objects");
  std::vector<ObjectSpec> objects;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    Reader o(objs[i], "objects[" + std::to_string(i) + "]");
    ObjectSpec spec{i, {o.number("a"), o.number("b")}, std::nullopt};
    if (o.has("color")) spec.color = o.string("color");
    objects.push_back(std::move(spec));
  }
  Arrangement start = arrangement_from(r.at("start"), "start");
  Arrangement goal = arrangement_from(r.at("goal"), "goal");
  const double eps = r.number("epsilon", kDefaultTolerance);
  try {
    return Scene(ws, std::move(objects), std::move(start), std::move(goal), eps);
  } catch (const SceneError& e) {
    throw InputError(std::string("invalid scene: ") + e.what());
  }
}

Json to_json(const PushConfig& cfg) {
  Json j;
  j["clearance"] = cfg.clearance;
  j["edge_margin"] = cfg.edge_margin;
  Json order = Json::array();
  for (Side s : cfg.side_order) order.push_back(std::string(to_string(s)));
  j["side_order"] = std::move(order);
  return j;
}

PushConfig push_config_from_json(const Json& j) {
  Reader r(j, "push");
  PushConfig cfg;
  cfg.clearance = r.number("clearance", cfg.clearance);
  cfg.edge_margin = r.number("edge_margin", cfg.edge_margin);
  if (r.has("side_order")) {
    const Json& order = r.array("side_order");
    if (order.size() != 4) throw InputError("field 'push.side_order': expected four sides");
    for (std::size_t i = 0; i < 4; ++i) {
      cfg.side_order[i] = side_from(order[i], "push.side_order[" + std::to_string(i) + "]");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("field 'push': ") + e.what());
  }
  return cfg;
}

Json to_json(const PlannerConfig& cfg) {
  Json j;
  Json budget;
  if (cfg.budget.kind == Budget::Kind::Expansions) {
    budget["expansions"] = cfg.budget.expansions;
  } else {
    budget["seconds"] = cfg.budget.seconds;
  }
  j["budget"] = std::move(budget);
  j["exploration_c"] = cfg.exploration_c;
  j["push_enabled"] = cfg.push_enabled;
  j["push"] = to_json(cfg.push);
  j["buffer_max_attempts"] = cfg.buffer_max_attempts;
  j["seed"] = cfg.seed;
  j["lambda"] = cfg.cost.lambda;
  j["pick_cost"] = cfg.cost.pick;
  j["depth_per_object"] = cfg.depth_per_object;
  j["widening_exponent"] = cfg.widening_exponent;
  return j;
}

PlannerConfig planner_config_from_json(const Json& j) {
  Reader r(j, "");
  PlannerConfig cfg;
  if (r.has("budget")) {
    Reader b(r.at("budget"), "budget");
    if (b.has("expansions") == b.has("seconds")) {
      throw InputError("field 'budget': expected exactly one of 'expansions' or 'seconds'");
    }
    cfg.budget = b.has("expansions") ? Budget::of_expansions(b.uint("expansions"))
                                     : Budget::of_seconds(b.number("seconds"));
  }
  cfg.exploration_c = r.number("exploration_c", cfg.exploration_c);
  cfg.push_enabled = r.boolean("push_enabled", cfg.push_enabled);
  if (r.has("push")) cfg.push = push_config_from_json(r.at("push"));
  cfg.buffer_max_attempts = r.uint("buffer_max_attempts", cfg.buffer_max_attempts);
  cfg.seed = r.uint("seed", cfg.seed);
  cfg.cost.lambda = r.number("lambda", cfg.cost.lambda);
  cfg.cost.pick = r.number("pick_cost", cfg.cost.pick);
  cfg.depth_per_object = r.uint("depth_per_object", cfg.depth_per_object);
  cfg.widening_exponent = r.number("widening_exponent", cfg.widening_exponent);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid planner config: ") + e.what());
  }
  return cfg;
}

Json to_json(const NoiseConfig& cfg) {
  Json j;
  j["enabled"] = cfg.enabled;
  j["lateral_sigma"] = cfg.lateral_sigma;
  j["depth_sigma"] = cfg.depth_sigma;
  j["perturb_placements"] = cfg.perturb_placements;
  return j;
}

NoiseConfig noise_config_from_json(const Json& j) {
  Reader r(j, "noise");
  NoiseConfig cfg;
  cfg.enabled = r.boolean("enabled", cfg.enabled);
  cfg.lateral_sigma = r.number("lateral_sigma", cfg.lateral_sigma);
  cfg.depth_sigma = r.number("depth_sigma", cfg.depth_sigma);
  cfg.perturb_placements = r.boolean("perturb_placements", cfg.perturb_placements);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("field 'noise': ") + e.what());
  }
  return cfg;
}

Json to_json(const Action& action) {
  Json j;
  if (const auto* pp = std::get_if<PickPlace>(&action)) {
    j["type"] = "PickPlace";
    j["object"] = pp->object;
    j["destination"] = vec_json(pp->destination);
  } else {
    const auto& ps = std::get<PushPlace>(action);
    j["type"] = "PushPlace";
    j["object"] = ps.object;
    j["side"] = std::string(to_string(ps.side));
    j["pre_push"] = vec_json(ps.pre_push);
  }
  return j;
}

namespace {

Action action_from(const Json& j, const std::string& path) {
  Reader r(j, path);
  const std::string type = r.string("type");
  const auto object = static_cast<ObjectId>(r.uint("object"));
  if (type == "PickPlace") return PickPlace{object, vec_from(r.at("destination"), r.child("destination"))};
  if (type == "PushPlace") {
    return PushPlace{object, side_from(r.at("side"), r.child("side")),
                     vec_from(r.at("pre_push"), r.child("pre_push"))};
  }
  throw InputError("field '" + r.child("type") + "': expected PickPlace or PushPlace");
}

}  // namespace

Action action_from_json(const Json& j) { return action_from(j, ""); }

Json to_json(const CostBreakdown& c) {
  Json j;
  j["approach"] = c.approach;
  j["pick"] = c.pick;
  j["transfer"] = c.transfer;
  j["lambda"] = c.lambda;
  j["cost"] = c.cost();
  return j;
}

Json to_json(const Plan& plan) {
  Json actions = Json::array();
  for (const auto& a : plan.actions) actions.push_back(to_json(a));
  Json costs = Json::array();
  for (const auto& c : plan.costs) costs.push_back(to_json(c));
  Json j;
  j["actions"] = std::move(actions);
  j["costs"] = std::move(costs);
  j["total"] = plan.total;
  return j;
}

Plan plan_from_json(const Json& j) {
  Reader r(j, "");
  Plan p;
  const Json& actions = r.array("actions");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    p.actions.push_back(action_from(actions[i], "actions[" + std::to_string(i) + "]"));
  }
  if (r.has("costs")) {
    const Json& costs = r.array("costs");
    for (std::size_t i = 0; i < costs.size(); ++i) {
      Reader c(costs[i], "costs[" + std::to_string(i) + "]");
      p.costs.push_back({c.number("approach"), c.number("pick"), c.number("transfer"), c.number("lambda")});
    }
  }
  p.total = r.number("total", 0.0);
  return p;
}

Json to_json(const SimEvent& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind));
  j["object"] = e.object;
  j["detail"] = e.detail;
  return j;
}

Json to_json(const ExecutionReport& report) {
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json js;
    js["planned_plan_length"] = s.planned_plan_length;
    js["replanned"] = s.replanned;
    js["skipped"] = s.skipped;
    if (!s.note.empty()) js["note"] = s.note;
    js["executed_action"] = s.executed_action ? to_json(*s.executed_action) : Json();
    js["cost"] = to_json(s.cost);
    Json events = Json::array();
    for (const auto& e : s.sim_events) events.push_back(to_json(e));
    js["sim_events"] = std::move(events);
    js["satisfied_after"] = s.satisfied_after;
    js["post_state"] = arrangement_json(s.post_state);
    steps.push_back(std::move(js));
  }
  Json j;
  j["terminated_by"] = std::string(to_string(report.terminated_by));
  j["total_actions"] = report.total_actions;
  j["success_rate"] = report.success_rate;
  j["robot_time_proxy"] = report.robot_time_proxy;
  j["travel"] = report.travel;
  j["final_state"] = arrangement_json(report.final_state);
  j["steps"] = std::move(steps);
  return j;
}

BenchConfig bench_config_from_json(const Json& j) {
  Reader r(j, "");
  BenchConfig cfg;
  if (r.has("object_counts")) {
    cfg.object_counts.clear();
    const Json& counts = r.array("object_counts");
    for (std::size_t i = 0; i < counts.size(); ++i) {
      cfg.object_counts.push_back(Reader::as_uint(counts[i], "object_counts[" + std::to_string(i) + "]"));
    }
  }
  cfg.scenes_per_count = r.uint("scenes_per_count", cfg.scenes_per_count);
  cfg.runs_per_scene = r.uint("runs_per_scene", cfg.runs_per_scene);
  if (r.has("size_range")) {
    const Vec2 range = vec_from(r.at("size_range"), "size_range");
    cfg.size_min = range.x;
    cfg.size_max = range.y;
  }
  if (r.has("workspace")) cfg.workspace = rect_from(r.at("workspace"), "workspace");
  cfg.tolerance = r.number("epsilon", cfg.tolerance);
  cfg.master_seed = r.uint("master_seed", cfg.master_seed);
  cfg.jobs = r.uint("jobs", cfg.jobs);

  if (r.has("variants")) {
    const Json& vs = r.array("variants");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Reader v(vs[i], "variants[" + std::to_string(i) + "]");
      Variant var{v.string("name"), {}};
      if (v.has("planner")) {
        try {
          var.planner = planner_config_from_json(v.at("planner"));
        } catch (const InputError& e) {
          throw InputError(v.child("planner") + ": " + e.what());
        }
      }
      cfg.variants.push_back(std::move(var));
    }
  } else {
    Budget budget = Budget::of_expansions(5000);
    if (r.has("budget")) budget = planner_config_from_json(Json{{"budget", r.at("budget")}}).budget;
    cfg.variants = default_variants(budget);
  }

  if (r.has("injected_scenes")) {
    const Json& scenes = r.array("injected_scenes");
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      try {
        cfg.injected.push_back(scene_from_json(scenes[i]));
      } catch (const InputError& e) {
        throw InputError("injected_scenes[" + std::to_string(i) + "]: " + e.what());
      }
    }
  }
  if (r.has("execution")) {
    Reader e(r.at("execution"), "execution");
    ExecutionProtocol p;
    p.step_budget = e.uint("step_budget", p.step_budget);
    if (e.has("noise")) p.noise = noise_config_from_json(e.at("noise"));
    p.options.per_action_overhead = e.number("per_action_overhead", p.options.per_action_overhead);
    p.options.reuse_consistent_plan = e.boolean("reuse_consistent_plan", p.options.reuse_consistent_plan);
    cfg.execution = p;
  }
  try {
    cfg.validate();
  } catch (const BenchError& e) {
    throw InputError(std::string("invalid bench config: ") + e.what());
  }
  return cfg;
}

std::string records_csv(std::span<const BenchRecord> records) {
  std::string out = "variant,N,scene,run,plan_found,actions,cost,planning_time_ms\n";
  for (const auto& r : records) {
    out += r.variant + "," + std::to_string(r.n) + "," + std::to_string(r.scene_index) + "," +
           std::to_string(r.run_index) + "," + (r.plan_found ? "1" : "0") + "," +
           std::to_string(r.actions) + "," + format("%.9f", r.cost) + "," +
           format("%.3f", r.planning_time_ms) + "\n";
  }
  return out;
}

std::string execution_records_csv(std::span<const ExecutionRecord> records) {
  std::string out = "variant,N,scene,run,terminated_by,actions,success_rate,robot_time_proxy\n";
  for (const auto& r : records) {
    out += r.variant + "," + std::to_string(r.n) + "," + std::to_string(r.scene_index) + "," +
           std::to_string(r.run_index) + "," + std::string(to_string(r.terminated_by)) + "," +
           std::to_string(r.actions) + "," + format("%.6f", r.success_rate) + "," +
           format("%.9f", r.robot_time_proxy) + "\n";
  }
  return out;
}

namespace {

Json stat_json(const Stat& s) {
  Json j;
  j["mean"] = s.mean;
  j["std"] = s.stddev;
  return j;
}

}  // namespace

Json to_json(const Summary& summary) {
  Json cells = Json::array();
  for (const auto& c : summary.cells) {
    Json j;
    j["variant"] = c.variant;
    j["N"] = c.n;
    j["scenes"] = c.scenes;
    j["scenes_solved"] = c.scenes_solved;
    j["runs"] = c.runs;
    j["runs_solved"] = c.runs_solved;
    j["actions"] = stat_json(c.actions);
    j["cost"] = stat_json(c.cost);
    cells.push_back(std::move(j));
  }
  Json reductions = Json::array();
  for (const auto& r : summary.reductions) {
    Json j;
    j["baseline"] = r.baseline;
    j["candidate"] = r.candidate;
    j["N"] = r.n;
    j["reduction_pct"] = r.percent;
    reductions.push_back(std::move(j));
  }
  Json j;
  j["cells"] = std::move(cells);
  j["reductions"] = std::move(reductions);
  return j;
}

std::string summary_csv(const Summary& summary) {
  std::string out =
      "variant,N,scenes,scenes_solved,runs,runs_solved,mean_actions,std_actions,mean_cost,std_cost,"
      "reduction_vs,reduction_pct\n";
  for (const auto& c : summary.cells) {
    std::string base = c.variant + "," + std::to_string(c.n) + "," + std::to_string(c.scenes) + "," +
                       std::to_string(c.scenes_solved) + "," + std::to_string(c.runs) + "," +
                       std::to_string(c.runs_solved) + "," + format("%.6f", c.actions.mean) + "," +
                       format("%.6f", c.actions.stddev) + "," + format("%.9f", c.cost.mean) + "," +
                       format("%.9f", c.cost.stddev);
    bool any = false;
    for (const auto& r : summary.reductions) {
      if (r.candidate != c.variant || r.n != c.n) continue;
      out += base + "," + r.baseline + "," + format("%.6f", r.percent) + "\n";
      any = true;
    }
    if (!any) out += base + ",,\n";
  }
  return out;
}

Json to_json(std::span<const ExecutionSummary> summary) {
  Json out = Json::array();
  for (const auto& s : summary) {
    Json j;
    j["variant"] = s.variant;
    j["N"] = s.n;
    j["actions"] = stat_json(s.actions);
    j["success_rate"] = stat_json(s.success_rate);
    j["robot_time_proxy"] = stat_json(s.robot_time);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace pplan
