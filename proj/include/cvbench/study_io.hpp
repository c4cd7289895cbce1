#pragma once
// Raw study table: a delimited text file with `# key=value` metadata lines,
// a fixed header, one row per (dataset, repetition, learner), and derived
// per-repetition / per-dataset rows for each configured scenario. Numbers
// are written shortest-round-trip, so reload is lossless and re-serializing
// reproduces the file byte for byte.

#include <filesystem>
#include <string>
#include <vector>

#include "cvbench/protocol.hpp"

namespace cvbench {

struct RawStudy {
  StudyRecord universe;  // scenario = full learner universe, in table order
  std::vector<Scenario> scenarios;
};

void write_raw_table(const std::filesystem::path& path,
                     const StudyRecord& universe,
                     const std::vector<Scenario>& scenarios);

RawStudy load_raw_table(const std::filesystem::path& path);

// Shortest-round-trip decimal formatting used by every artifact writer.
std::string format_double(double v);

}  // namespace cvbench
