// cvbench: compare flat and nested cross-validation as model-selection
// procedures over CSV datasets and a suite of built-in learners.

#include <string>

#include "CLI11.hpp"

#include "cvbench/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "cvbench - flat vs nested cross-validation model-selection studies"};
  app.require_subcommand(1);

  std::string config_path;
  cvbench::RunOverrides overrides;
  std::string run_output_dir;
  int run_workers = 0;
  std::uint64_t run_seed = 0;
  int run_reps = 0;
  auto* run = app.add_subcommand("run", "run a study from a config file");
  run->add_option("config", config_path, "study config (JSON)")->required();
  auto* opt_dir =
      run->add_option("--output-dir", run_output_dir, "artifact directory");
  auto* opt_workers = run->add_option(
      "--workers", run_workers, "worker threads (default: CVBENCH_WORKERS)");
  auto* opt_seed = run->add_option("--seed", run_seed, "master seed override");
  auto* opt_reps =
      run->add_option("--repetitions", run_reps, "repetitions override");

  cvbench::ReportArgs report_args;
  std::string report_table, report_analysis, report_threshold,
      report_baseline, report_out;
  std::size_t report_min_size = 0;
  auto* report =
      app.add_subcommand("report", "rebuild the report from a raw table");
  report->add_option("raw-table", report_table, "study_raw.csv path")
      ->required();
  auto* opt_analysis = report->add_option(
      "--analysis", report_analysis, "primary|avg_first|per_repetition");
  auto* opt_threshold =
      report->add_option("--threshold", report_threshold, "nested-gap|stddev");
  auto* opt_min =
      report->add_option("--min-size", report_min_size,
                         "keep only datasets with at least this many rows");
  auto* opt_baseline = report->add_option("--baseline", report_baseline,
                                          "fixed-learner comparison");
  auto* opt_out = report->add_option("--out", report_out, "report file path");

  cvbench::PlotDataArgs plot_args;
  std::string plot_table, plot_prefix, plot_scenario;
  auto* plotdata =
      app.add_subcommand("plotdata", "emit plot data from a raw table");
  plotdata->add_option("raw-table", plot_table, "study_raw.csv path")
      ->required();
  auto* opt_prefix =
      plotdata->add_option("--out-prefix", plot_prefix, "output path prefix");
  auto* opt_scenario =
      plotdata->add_option("--scenario", plot_scenario, "single scenario");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (*opt_dir) overrides.output_dir = run_output_dir;
    if (*opt_workers) overrides.workers = run_workers;
    if (*opt_seed) overrides.master_seed = run_seed;
    if (*opt_reps) overrides.repetitions = run_reps;
    return cvbench::run_command(config_path, overrides);
  }
  if (report->parsed()) {
    report_args.raw_table = report_table;
    if (*opt_analysis) report_args.analysis = report_analysis;
    if (*opt_threshold) report_args.threshold = report_threshold;
    if (*opt_min) report_args.min_size = report_min_size;
    if (*opt_baseline) report_args.baseline = report_baseline;
    if (*opt_out) report_args.out = report_out;
    return cvbench::report_command(report_args);
  }
  plot_args.raw_table = plot_table;
  if (*opt_prefix) plot_args.out_prefix = plot_prefix;
  if (*opt_scenario) plot_args.scenario = plot_scenario;
  return cvbench::plotdata_command(plot_args);
}
