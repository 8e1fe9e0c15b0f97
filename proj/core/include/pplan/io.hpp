#pragma once

// JSON and CSV formats of scenes, configs, plans, reports and bench output.
// Output objects keep a stable field order so files diff cleanly.

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pplan/bench.hpp"
#include "pplan/executor.hpp"
#include "pplan/planner.hpp"
#include "pplan/scene.hpp"

namespace pplan {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input; the message names the file, the line for
/// syntax errors, and the offending field path for schema errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json(const std::string& text, const std::string& source = "<input>");
Json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

Json to_json(const PushConfig& cfg);
PushConfig push_config_from_json(const Json& j);

Json to_json(const PlannerConfig& cfg);
PlannerConfig planner_config_from_json(const Json& j);

Json to_json(const NoiseConfig& cfg);
NoiseConfig noise_config_from_json(const Json& j);

Json to_json(const Action& action);
Action action_from_json(const Json& j);

Json to_json(const CostBreakdown& c);
Json to_json(const Plan& plan);
Plan plan_from_json(const Json& j);

Json to_json(const SimEvent& e);
Json to_json(const ExecutionReport& report);

BenchConfig bench_config_from_json(const Json& j);

/// Header: variant,N,scene,run,plan_found,actions,cost,planning_time_ms
std::string records_csv(std::span<const BenchRecord> records);
std::string execution_records_csv(std::span<const ExecutionRecord> records);
Json to_json(const Summary& summary);
std::string summary_csv(const Summary& summary);
Json to_json(std::span<const ExecutionSummary> summary);

/// Fixed six-decimal formatting used by byte-stable text outputs.
std::string fixed6(double v);

}  // namespace pplan
