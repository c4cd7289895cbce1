#pragma once
// Study reports: per-scenario agreement/Wilcoxon/bootstrap summaries, mean
// rank tables under the nested and flat orderings, per-dataset pair tables,
// and plot-data emission.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cvbench/protocol.hpp"
#include "cvbench/stats.hpp"
#include "cvbench/study_io.hpp"

namespace cvbench {

struct ReportOptions {
  Analysis analysis = Analysis::primary;
  Threshold threshold = Threshold::nested_gap;
  std::optional<std::size_t> min_size;
  std::optional<std::string> baseline;
  std::size_t bootstrap_resamples = 5000;
  double level = 0.95;
};

struct ScenarioSummary {
  std::string label;
  ChoiceRate same_choice;
  TestResult wilcoxon;
  double mean_diff = 0.0;  // mean of (abs gain - threshold)
  IntervalEstimate ci;
  std::size_t n_points = 0;
};

struct StudyReport {
  ReportOptions options;
  std::size_t n_datasets = 0;  // after the min-size filter
  bool low_power = false;      // single-dataset study
  std::vector<ScenarioSummary> scenarios;
  std::vector<ScenarioSummary> baselines;  // present when a baseline is set
  std::vector<std::pair<std::string, double>> nested_ranks;  // best first
  std::vector<std::pair<std::string, double>> flat_ranks;
  std::vector<std::pair<std::string, std::vector<AnalysisPoint>>> pair_tables;
};

const char* analysis_name(Analysis a);
const char* threshold_name(Threshold t);
std::optional<Analysis> parse_analysis(const std::string& s);
std::optional<Threshold> parse_threshold(const std::string& s);

// Keeps only datasets with n_instances >= min_size and recomputes nothing
// else; statistics downstream are computed on the subset.
StudyRecord filter_min_size(const StudyRecord& study, std::size_t min_size);

StudyReport build_report(const RawStudy& raw, const ReportOptions& options);

void write_report(const std::filesystem::path& path,
                  const StudyReport& report);

// Scatter file: per-dataset (dataset, abs_accgain, delta) rows. Pooled file:
// (series, value) rows for the two distributions. Always derived from the
// primary per-dataset analysis of one scenario.
void write_plot_data(const std::filesystem::path& scatter_path,
                     const std::filesystem::path& pooled_path,
                     const RawStudy& raw, const Scenario& scenario);

}  // namespace cvbench
