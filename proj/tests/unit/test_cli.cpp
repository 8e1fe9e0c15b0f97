#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "pplan/io.hpp"
#include "support.hpp"

using namespace pplan;
using namespace pplan::cli;

namespace {

const fs::path kFixtures = PPLAN_FIXTURE_DIR;
const fs::path kGolden = PPLAN_GOLDEN_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(PPLAN_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("cli plan") {
  const fs::path dir = scratch("plan");
  std::ostringstream err;
  REQUIRE(cmd_plan(kFixtures / "swap.json", kFixtures / "pp.json", dir / "p.json", {}, err) == kOk);
  CHECK(plan_from_json(load_json_file(dir / "p.json")).size() == 2);

  REQUIRE(cmd_plan(kFixtures / "solved.json", kFixtures / "pp.json", dir / "s.json", {}, err) == kOk);
  CHECK(plan_from_json(load_json_file(dir / "s.json")).size() == 0);

  std::ostringstream bad;
  CHECK(cmd_plan(kFixtures / "truncated.json", kFixtures / "pp.json", dir / "t.json", {}, bad) == kInputError);
  CHECK(bad.str().find("truncated.json:4:") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "t.json"));

  // One expansion is not enough to swap.
  const fs::path tight = dir / "tight.json";
  write_text_file(tight, R"({"budget": {"expansions": 1}})");
  std::ostringstream fail;
  CHECK(cmd_plan(kFixtures / "swap.json", tight, dir / "f.json", {}, fail) == kFailure);
}

TEST_CASE("cli execute") {
  const fs::path dir = scratch("execute");
  std::ostringstream err;
  REQUIRE(cmd_execute(kFixtures / "swap.json", kFixtures / "pp.json", dir / "r.json", false, 15, {}, err) == kOk);
  const Json report = load_json_file(dir / "r.json");
  CHECK(report["terminated_by"] == "AllAtGoal");
  // Zero noise: executing equals the first plan, which has two actions.
  CHECK(report["total_actions"] == 2);

  REQUIRE(cmd_execute(kFixtures / "solved.json", kFixtures / "pp.json", dir / "s.json", true, 15, {}, err) == kOk);
  CHECK(load_json_file(dir / "s.json")["total_actions"] == 0);

  // A budget of one step cannot finish a swap.
  CHECK(cmd_execute(kFixtures / "swap.json", kFixtures / "pp.json", dir / "b.json", false, 1, {}, err) == kFailure);
  CHECK(cmd_execute(kFixtures / "swap.json", kFixtures / "pp.json", dir / "z.json", false, 0, {}, err) ==
        kInputError);
}

TEST_CASE("cli bench") {
  const fs::path a = scratch("bench_a"), b = scratch("bench_b");
  std::ostringstream err;
  REQUIRE(cmd_bench(kFixtures / "bench_tiny.json", a, 1, {}, err) == kOk);
  REQUIRE(cmd_bench(kFixtures / "bench_tiny.json", b, 3, {}, err) == kOk);
  for (const char* f : {"records.csv", "summary.json", "summary.csv", "summary.svg"}) CHECK(fs::exists(a / f));
  const std::string records = slurp(a / "records.csv");
  CHECK(records == slurp(b / "records.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));

  // 2 variants x 1 N x 3 scenes x 2 runs, plus the header.
  std::stringstream ss(records);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(ss, line);) rows.push_back(split(line));
  REQUIRE(rows.size() == 13);

  // Recompute the reduction from the records: per-scene means, then means.
  std::map<std::string, std::map<std::string, std::pair<double, int>>> per_scene;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][4] != "1") continue;
    auto& [sum, k] = per_scene[rows[i][0]][rows[i][2]];
    sum += std::stod(rows[i][6]);
    ++k;
  }
  auto mean_of = [&](const std::string& v) {
    double m = 0;
    for (const auto& [scene, t] : per_scene[v]) m += t.first / t.second;
    return m / static_cast<double>(per_scene[v].size());
  };
  const double expected = percent_reduction(mean_of("MCTS"), mean_of("MCTS+PP"));
  const Json summary = load_json_file(a / "summary.json");
  REQUIRE(summary["reductions"].size() == 1);
  CHECK(summary["reductions"][0]["reduction_pct"].get<double>() == doctest::Approx(expected).epsilon(1e-6));

  const fs::path bad_cfg = scratch("bench_bad") / "cfg.json";
  write_text_file(bad_cfg, R"({"scenes_per_count": 0})");
  std::ostringstream bad;
  CHECK(cmd_bench(bad_cfg, scratch("bench_bad_out"), {}, {}, bad) == kInputError);
  CHECK(bad.str().find("scenes_per_count") != std::string::npos);
}

TEST_CASE("cli render") {
  const fs::path dir = scratch("render");
  std::ostringstream err;
  RenderStyle style;
  REQUIRE(cmd_render(kFixtures / "empty.json", {}, dir / "empty.svg", style, false, err) == kOk);
  const std::string empty = slurp(dir / "empty.svg");
  CHECK(occurrences(empty, "<rect") == 1);
  CHECK(occurrences(empty, "class=\"workspace\"") == 1);

  REQUIRE(cmd_render(kFixtures / "swap.json", {}, dir / "swap.svg", style, false, err) == kOk);
  const std::string swap = slurp(dir / "swap.svg");
  CHECK(occurrences(swap, "class=\"object\"") == 2);
  CHECK(occurrences(swap, "class=\"goal\"") == 2);
  CHECK(occurrences(swap, "stroke-dasharray") == 2);
  // Colors are tied to ids: object 0's fill matches goal 0's stroke.
  const Scene s = scene_from_json(load_json_file(kFixtures / "swap.json"));
  CHECK(occurrences(swap, "fill=\"" + color_for(s.object(0)) + "\"") == 1);
  CHECK(occurrences(swap, "stroke=\"" + color_for(s.object(0)) + "\"") == 1);

  REQUIRE(cmd_render(kFixtures / "render_pinned.json", {}, dir / "pinned.svg", style, false, err) == kOk);
  CHECK(slurp(dir / "pinned.svg") == slurp(kGolden / "render_pinned.svg"));

  REQUIRE(cmd_plan(kFixtures / "swap.json", kFixtures / "pp.json", dir / "p.json", {}, err) == kOk);
  style.show_gripper = true;
  REQUIRE(cmd_render(kFixtures / "swap.json", dir / "p.json", dir / "frame.svg", style, true, err) == kOk);
  CHECK(fs::exists(dir / "frame_000.svg"));
  CHECK(fs::exists(dir / "frame_002.svg"));
  CHECK_FALSE(fs::exists(dir / "frame_003.svg"));
  CHECK(occurrences(slurp(dir / "frame_000.svg"), "class=\"gripper\"") == 0);
  CHECK(occurrences(slurp(dir / "frame_001.svg"), "class=\"gripper\"") == 1);

  style.scale = 0;
  CHECK(cmd_render(kFixtures / "swap.json", {}, dir / "x.svg", style, false, err) == kInputError);
}

TEST_CASE("seed resolution") {
  ::unsetenv("PPLAN_SEED");
  CHECK_FALSE(resolve_seed({}));
  CHECK(resolve_seed(5) == 5u);
  ::setenv("PPLAN_SEED", "42", 1);
  CHECK(resolve_seed({}) == 42u);
  CHECK(resolve_seed(5) == 5u);
  ::setenv("PPLAN_SEED", "forty", 1);
  CHECK_THROWS_AS(resolve_seed({}), InputError);
  ::unsetenv("PPLAN_SEED");
}
