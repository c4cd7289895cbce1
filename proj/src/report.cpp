#include "cvbench/report.hpp"

#include <algorithm>
#include <fstream>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

const char* analysis_name(Analysis a) {
  switch (a) {
    case Analysis::primary: return "primary";
    case Analysis::avg_first: return "avg_first";
    case Analysis::per_repetition: return "per_repetition";
  }
  return "?";
}

const char* threshold_name(Threshold t) {
  return t == Threshold::nested_gap ? "nested-gap" : "stddev";
}

std::optional<Analysis> parse_analysis(const std::string& s) {
  if (s == "primary") return Analysis::primary;
  if (s == "avg_first") return Analysis::avg_first;
  if (s == "per_repetition") return Analysis::per_repetition;
  return std::nullopt;
}

std::optional<Threshold> parse_threshold(const std::string& s) {
  if (s == "nested-gap") return Threshold::nested_gap;
  if (s == "stddev") return Threshold::stddev;
  return std::nullopt;
}

StudyRecord filter_min_size(const StudyRecord& study, std::size_t min_size) {
  StudyRecord out;
  out.scenario = study.scenario;
  out.params = study.params;
  for (const auto& ds : study.datasets)
    if (ds.n_instances >= min_size) out.datasets.push_back(ds);
  return out;
}

namespace {

ScenarioSummary summarize(const StudyRecord& sub, const std::string& label,
                          std::size_t candidate_count,
                          const AnalysisOutput& analyzed,
                          const ReportOptions& options,
                          std::uint64_t bootstrap_seed) {
  ScenarioSummary s;
  s.label = label;
  s.n_points = analyzed.points.size();
  s.same_choice = same_choice_rate(analyzed.selections, candidate_count);

  PairedSample sample;
  std::vector<double> diffs;
  for (const auto& p : analyzed.points) {
    sample.pairs.emplace_back(p.abs_gain, p.threshold);
    diffs.push_back(p.abs_gain - p.threshold);
  }
  s.wilcoxon = wilcoxon_one_sided(sample);
  double total = 0.0;
  for (double d : diffs) total += d;
  s.mean_diff = total / static_cast<double>(diffs.size());
  s.ci = bootstrap_ci_mean(diffs, options.bootstrap_resamples, options.level,
                           bootstrap_seed);
  (void)sub;
  return s;
}

std::vector<std::pair<std::string, double>> rank_table(
    const StudyRecord& study, bool nested) {
  const auto& ids = study.scenario.learners;
  std::vector<std::vector<double>> cells;
  for (const auto& ds : study.datasets) {
    for (const auto& rep : ds.repetitions) {
      std::vector<double> row;
      for (const auto& id : ids) {
        const LearnerCell* found = nullptr;
        for (const auto& c : rep.cells)
          if (c.learner == id) found = &c;
        if (!found)
          throw IncompleteMatrix("no cell for learner '" + id + "'");
        row.push_back(nested ? found->nested_estimate : found->flat_estimate);
      }
      cells.push_back(std::move(row));
    }
  }
  auto ranks = mean_ranks(ids, cells);
  std::stable_sort(ranks.begin(), ranks.end(),
                   [](const auto& a, const auto& b) {
                     return a.second < b.second;
                   });
  return ranks;
}

}  // namespace

StudyReport build_report(const RawStudy& raw, const ReportOptions& options) {
  StudyReport report;
  report.options = options;

  StudyRecord universe = options.min_size
                             ? filter_min_size(raw.universe, *options.min_size)
                             : raw.universe;
  if (universe.datasets.empty())
    throw IncompleteStudy("no datasets left after the size filter");
  report.n_datasets = universe.datasets.size();
  report.low_power = report.n_datasets == 1;

  report.nested_ranks = rank_table(universe, /*nested=*/true);
  report.flat_ranks = rank_table(universe, /*nested=*/false);

  for (const auto& scenario : raw.scenarios) {
    StudyRecord sub = derive_scenario(universe, scenario);
    AnalysisOutput analyzed =
        analyze(sub, options.analysis, options.threshold);
    std::uint64_t seed =
        hash64(universe.params.master_seed, "bootstrap", scenario.name,
               analysis_name(options.analysis),
               threshold_name(options.threshold));
    report.scenarios.push_back(summarize(sub, scenario.name,
                                         scenario.learners.size(), analyzed,
                                         options, seed));
    report.pair_tables.emplace_back(scenario.name, analyzed.points);

    if (options.baseline) {
      // Fixed-learner comparison; always the per-repetition record analysis.
      StudyRecord base = baseline_fixed(universe, scenario, *options.baseline);
      AnalysisOutput base_analyzed =
          analyze(base, Analysis::primary, options.threshold);
      std::uint64_t base_seed =
          hash64(universe.params.master_seed, "bootstrap", scenario.name,
                 "baseline", *options.baseline,
                 threshold_name(options.threshold));
      report.baselines.push_back(
          summarize(base, scenario.name + ":fixed=" + *options.baseline,
                    scenario.learners.size(), base_analyzed, options,
                    base_seed));
    }
  }
  return report;
}

void write_report(const std::filesystem::path& path,
                  const StudyReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());

  out << "# cvbench-report v1\n";
  out << "# analysis=" << analysis_name(report.options.analysis) << '\n';
  out << "# threshold=" << threshold_name(report.options.threshold) << '\n';
  if (report.options.min_size)
    out << "# min_size=" << *report.options.min_size << '\n';
  out << "# datasets=" << report.n_datasets << '\n';
  if (report.low_power)
    out << "# note=low power: statistics rest on a single dataset\n";

  auto emit_summary = [&](const ScenarioSummary& s) {
    out << s.label << ',' << format_double(s.same_choice.rate) << ','
        << format_double(s.same_choice.random_baseline) << ','
        << format_double(s.wilcoxon.p_value) << ','
        << format_double(s.mean_diff) << ',' << format_double(s.ci.lower)
        << ',' << format_double(s.ci.upper) << ',' << s.n_points << ','
        << s.wilcoxon.method << '\n';
  };
  constexpr const char* kSummaryHeader =
      "scenario,same_choice,random_baseline,p_value,mean,low_ci,high_ci,"
      "n_pairs,method";

  out << "# [summary]\n" << kSummaryHeader << '\n';
  for (const auto& s : report.scenarios) emit_summary(s);

  if (!report.baselines.empty()) {
    out << "# [baseline]\n" << kSummaryHeader << '\n';
    for (const auto& s : report.baselines) emit_summary(s);
  }

  out << "# [mean_ranks_nested]\nlearner,mean_rank\n";
  for (const auto& [id, rank] : report.nested_ranks)
    out << id << ',' << format_double(rank) << '\n';
  out << "# [mean_ranks_flat]\nlearner,mean_rank\n";
  for (const auto& [id, rank] : report.flat_ranks)
    out << id << ',' << format_double(rank) << '\n';

  out << "# [pairs]\nscenario,dataset,repetition,abs_accgain,delta\n";
  for (const auto& [scenario, points] : report.pair_tables) {
    for (const auto& p : points) {
      out << scenario << ',' << p.dataset << ',';
      if (p.repetition >= 0) out << p.repetition;
      out << ',' << format_double(p.abs_gain) << ','
          << format_double(p.threshold) << '\n';
    }
  }
  if (!out) throw Error("failed writing " + path.string());
}

void write_plot_data(const std::filesystem::path& scatter_path,
                     const std::filesystem::path& pooled_path,
                     const RawStudy& raw, const Scenario& scenario) {
  StudyRecord sub = derive_scenario(raw.universe, scenario);
  AnalysisOutput analyzed =
      analyze(sub, Analysis::primary, Threshold::nested_gap);

  std::ofstream scatter(scatter_path);
  if (!scatter) throw Error("cannot write file: " + scatter_path.string());
  scatter << "dataset,abs_accgain,delta\n";
  for (const auto& p : analyzed.points)
    scatter << p.dataset << ',' << format_double(p.abs_gain) << ','
            << format_double(p.threshold) << '\n';
  if (!scatter) throw Error("failed writing " + scatter_path.string());

  std::ofstream pooled(pooled_path);
  if (!pooled) throw Error("cannot write file: " + pooled_path.string());
  pooled << "series,value\n";
  for (const auto& p : analyzed.points)
    pooled << "abs_accgain," << format_double(p.abs_gain) << '\n';
  for (const auto& p : analyzed.points)
    pooled << "delta," << format_double(p.threshold) << '\n';
  if (!pooled) throw Error("failed writing " + pooled_path.string());
}

}  // namespace cvbench
