#pragma once
// Command implementations behind the CLI. Exit codes: 0 success, 2 config or
// flag problem, 3 data/table problem, 4 runtime failure inside a study.

#include <filesystem>
#include <optional>
#include <string>

namespace cvbench {

struct RunOverrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<int> workers;
  std::optional<std::uint64_t> master_seed;
  std::optional<int> repetitions;
};

int run_command(const std::filesystem::path& config_path,
                const RunOverrides& overrides);

struct ReportArgs {
  std::filesystem::path raw_table;
  std::optional<std::string> analysis;
  std::optional<std::string> threshold;
  std::optional<std::size_t> min_size;
  std::optional<std::string> baseline;
  std::filesystem::path out = "study_report.txt";
};

int report_command(const ReportArgs& args);

struct PlotDataArgs {
  std::filesystem::path raw_table;
  std::string out_prefix = "plot";
  std::optional<std::string> scenario;  // default: every scenario in the table
};

int plotdata_command(const PlotDataArgs& args);

// Worker count: explicit value > CVBENCH_WORKERS > hardware concurrency.
int resolve_workers(std::optional<int> configured);

}  // namespace cvbench
