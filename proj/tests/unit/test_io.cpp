#include <doctest.h>

#include "pplan/io.hpp"
#include "support.hpp"

using namespace pplan;
using namespace pplan::testing;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("scene JSON has a stable field order and round-trips") {
  const Scene s = swap_scene();
  CHECK(to_json(s).dump() ==
        R"({"workspace":[0.0,0.0,1.0,1.0],"objects":[{"a":0.05,"b":0.05},{"a":0.05,"b":0.05}],)"
        R"("start":[[0.4,0.5],[0.6,0.5]],"goal":[[0.6,0.5],[0.4,0.5]],"epsilon":0.005})");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene r = random_scene(6, seed);
    const Scene back = scene_from_json(parse_json(to_json(r).dump()));
    CHECK(back.current().poses == r.current().poses);
    CHECK(back.goal().poses == r.goal().poses);
    CHECK(to_json(back).dump() == to_json(r).dump());
  }
}

TEST_CASE("diagnostics name the location or field") {
  CHECK(error_of([] { parse_json("{\n  \"a\": [1,\n", "f.json"); }).find("f.json:3:") != std::string::npos);
  CHECK(error_of([] { scene_from_json(parse_json(R"({"workspace":[0,0,1,1],"objects":[{"a":0.1}]})")); })
            .find("objects[0].b") != std::string::npos);
  CHECK(error_of([] { planner_config_from_json(parse_json(R"({"budget":{"expansions":-3}})")); })
            .find("expansions") != std::string::npos);
  CHECK(error_of([] { planner_config_from_json(parse_json(R"({"exploration_c":"big"})")); })
            .find("exploration_c") != std::string::npos);
  CHECK(error_of([] { action_from_json(parse_json(R"({"type":"Throw","object":0})")); }).find("type") !=
        std::string::npos);
  CHECK_FALSE(error_of([] { load_json_file("/nonexistent/x.json"); }).empty());
}

TEST_CASE("planner config round-trip") {
  PlannerConfig c;
  c.budget = Budget::of_seconds(1.5);
  c.push_enabled = false;
  c.seed = 99;
  c.push.clearance = 0.002;
  c.push.side_order = {Side::Down, Side::Up, Side::Right, Side::Left};
  c.cost.lambda = 2.0;
  const PlannerConfig back = planner_config_from_json(to_json(c));
  CHECK(back.budget.kind == Budget::Kind::WallClock);
  CHECK(back.budget.seconds == 1.5);
  CHECK_FALSE(back.push_enabled);
  CHECK(back.seed == 99);
  CHECK(back.push.clearance == 0.002);
  CHECK(back.push.side_order == c.push.side_order);
  CHECK(back.cost.lambda == 2.0);
  CHECK(to_json(back).dump() == to_json(c).dump());
}

TEST_CASE("plan JSON round-trip") {
  const Scene s = swap_scene();
  PlannerConfig c;
  c.budget = Budget::of_expansions(2000);
  const auto p = plan(s, c);
  REQUIRE(p);
  const Json j = to_json(*p);
  CHECK(j.contains("actions"));
  CHECK(j.contains("costs"));
  CHECK(j.contains("total"));
  const Plan back = plan_from_json(j);
  CHECK(back.actions == p->actions);
  CHECK(back.total == p->total);
}

TEST_CASE("records CSV") {
  BenchRecord r{"MCTS+PP", 4, 2, 1, true, 5, 3.25, 0.0, 12.0, 40};
  const std::vector<BenchRecord> rs{r};
  CHECK(records_csv(rs) ==
        "variant,N,scene,run,plan_found,actions,cost,planning_time_ms\n"
        "MCTS+PP,4,2,1,1,5,3.250000000,0.000\n");
}

TEST_CASE("fixed6") {
  CHECK(fixed6(1.0) == "1.000000");
  CHECK(fixed6(-0.0000004) == "0.000000");
  CHECK(fixed6(2.5e-7) == "0.000000");
}
