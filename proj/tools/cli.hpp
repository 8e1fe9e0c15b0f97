#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "render.hpp"

namespace pplan::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kFailure = 2 };

namespace fs = std::filesystem;

/// Explicit flag first, then PPLAN_SEED, else nothing. Malformed env values are
/// an input error.
std::optional<std::uint64_t> resolve_seed(std::optional<std::uint64_t> flag);

int cmd_plan(const fs::path& scene_file, const fs::path& config_file, const fs::path& out_file,
             std::optional<std::uint64_t> seed, std::ostream& err);

int cmd_execute(const fs::path& scene_file, const fs::path& config_file, const fs::path& out_file, bool noise,
                std::size_t steps, std::optional<std::uint64_t> seed, std::ostream& err);

int cmd_bench(const fs::path& config_file, const fs::path& out_dir, std::optional<std::size_t> jobs,
              std::optional<std::uint64_t> seed, std::ostream& err);

/// Without --frames writes one SVG (with action legs when a plan is given).
/// With frames writes <stem>_000.svg, <stem>_001.svg, ... next to out_file.
int cmd_render(const fs::path& scene_file, const std::optional<fs::path>& plan_file, const fs::path& out_file,
               const RenderStyle& style, bool frames, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, char** argv);

}  // namespace pplan::cli
