#pragma once
// Declarative study configuration (JSON). Schema documented in README.md.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cvbench/dataset.hpp"
#include "cvbench/protocol.hpp"
#include "cvbench/report.hpp"

namespace cvbench {

struct DatasetEntry {
  std::string name;
  std::filesystem::path path;  // resolved against the config file directory
  LabelColumn label_column;
  bool has_header = true;
  std::optional<std::size_t> subsample_cap;  // default 5000, null disables
};

struct StudyConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<std::string> learners;  // universe, ordered
  std::vector<Scenario> scenarios;    // ordered as configured
  LearnerSet learner_set;             // grids possibly overridden
  StudyParams params;
  std::optional<int> workers;
  Analysis analysis = Analysis::primary;
  Threshold threshold = Threshold::nested_gap;
  std::optional<std::string> baseline;
  std::optional<std::size_t> min_size;
  std::filesystem::path output_dir = "out";
};

// Throws ConfigError on any parse or validation problem.
StudyConfig load_config(const std::filesystem::path& path);

}  // namespace cvbench
