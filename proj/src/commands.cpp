#include "cvbench/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <thread>

#include "cvbench/config.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/report.hpp"
#include "cvbench/rng.hpp"
#include "cvbench/split.hpp"
#include "cvbench/study_io.hpp"

namespace cvbench {

namespace {

int classify_failure(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const StudyExecutionError*>(&e)) return 4;
  if (dynamic_cast<const Error*>(&e)) return 3;
  return 4;
}

int report_failure(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  return classify_failure(e);
}

}  // namespace

int resolve_workers(std::optional<int> configured) {
  if (configured) return std::max(1, *configured);
  if (const char* env = std::getenv("CVBENCH_WORKERS")) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc() && v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int run_command(const std::filesystem::path& config_path,
                const RunOverrides& overrides) {
  StudyConfig config;
  try {
    config = load_config(config_path);
    if (overrides.output_dir) config.output_dir = *overrides.output_dir;
    if (overrides.master_seed) config.params.master_seed = *overrides.master_seed;
    if (overrides.repetitions) {
      if (*overrides.repetitions < 1)
        throw ConfigError("repetitions must be at least 1");
      config.params.repetitions = *overrides.repetitions;
    }
    if (overrides.workers) config.workers = *overrides.workers;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
  config.params.workers = resolve_workers(config.workers);

  std::vector<Dataset> datasets;
  try {
    for (const auto& entry : config.datasets) {
      CsvOptions options{entry.label_column, entry.has_header};
      Dataset d = load_csv(entry.path, options);
      d.name = entry.name;
      if (entry.subsample_cap)
        d = subsample(d, *entry.subsample_cap,
                      hash64(config.params.master_seed, d.name, "subsample"));
      datasets.push_back(std::move(d));
    }
  } catch (const std::exception& e) {
    return report_failure(e);
  }

  try {
    Scenario universe{"", config.learners};
    StudyRecord study =
        run_study(datasets, universe, config.learner_set, config.params);

    std::filesystem::create_directories(config.output_dir);
    std::filesystem::path raw_path = config.output_dir / "study_raw.csv";
    write_raw_table(raw_path, study, config.scenarios);

    RawStudy raw{std::move(study), config.scenarios};
    ReportOptions options;
    options.analysis = config.analysis;
    options.threshold = config.threshold;
    options.min_size = config.min_size;
    options.baseline = config.baseline;
    std::filesystem::path report_path =
        config.output_dir / "study_report.txt";
    write_report(report_path, build_report(raw, options));

    std::cerr << "wrote " << raw_path.string() << '\n';
    std::cerr << "wrote " << report_path.string() << '\n';
    for (const auto& scenario : raw.scenarios) {
      auto scatter =
          config.output_dir / ("plot_scatter_" + scenario.name + ".csv");
      auto pooled =
          config.output_dir / ("plot_pooled_" + scenario.name + ".csv");
      write_plot_data(scatter, pooled, raw, scenario);
      std::cerr << "wrote " << scatter.string() << '\n';
      std::cerr << "wrote " << pooled.string() << '\n';
    }
  } catch (const std::exception& e) {
    return report_failure(e);
  }
  return 0;
}

int report_command(const ReportArgs& args) {
  ReportOptions options;
  try {
    if (args.analysis) {
      auto a = parse_analysis(*args.analysis);
      if (!a)
        throw ConfigError("analysis must be primary|avg_first|per_repetition");
      options.analysis = *a;
    }
    if (args.threshold) {
      auto t = parse_threshold(*args.threshold);
      if (!t) throw ConfigError("threshold must be nested-gap|stddev");
      options.threshold = *t;
    }
    options.min_size = args.min_size;
    options.baseline = args.baseline;
  } catch (const std::exception& e) {
    return report_failure(e);
  }

  try {
    RawStudy raw = load_raw_table(args.raw_table);
    write_report(args.out, build_report(raw, options));
    std::cerr << "wrote " << args.out.string() << '\n';
  } catch (const std::exception& e) {
    return report_failure(e);
  }
  return 0;
}

int plotdata_command(const PlotDataArgs& args) {
  try {
    RawStudy raw = load_raw_table(args.raw_table);
    bool matched = false;
    for (const auto& scenario : raw.scenarios) {
      if (args.scenario && scenario.name != *args.scenario) continue;
      matched = true;
      std::filesystem::path scatter =
          args.out_prefix + "_scatter_" + scenario.name + ".csv";
      std::filesystem::path pooled =
          args.out_prefix + "_pooled_" + scenario.name + ".csv";
      write_plot_data(scatter, pooled, raw, scenario);
      std::cerr << "wrote " << scatter.string() << '\n';
      std::cerr << "wrote " << pooled.string() << '\n';
    }
    if (!matched)
      throw ConfigError(args.scenario
                            ? "no scenario named '" + *args.scenario +
                                  "' in the table"
                            : "table defines no scenarios");
  } catch (const std::exception& e) {
    return report_failure(e);
  }
  return 0;
}

}  // namespace cvbench
