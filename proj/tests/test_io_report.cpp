#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvbench/errors.hpp"
#include "cvbench/report.hpp"
#include "cvbench/study_io.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvbench;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cvbench_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RawStudy small_raw_study() {
  Scenario universe{"", {"knn", "gnb", "linridge"}};
  auto learners = LearnerSet::builtin(universe.learners);
  StudyParams params;
  params.repetitions = 2;
  params.master_seed = 314;
  std::vector<Dataset> datasets{
      cvtest::gaussian_mixture("small", 60, 3, 1.3, 3),
      cvtest::gaussian_mixture("large", 80, 3, 0.8, 4)};
  StudyRecord study = run_study(datasets, universe, learners, params);
  return RawStudy{std::move(study),
                  {{"pair", {"knn", "gnb"}},
                   {"full", {"knn", "gnb", "linridge"}}}};
}

}  // namespace

TEST_CASE("raw table round-trips losslessly and byte-stably") {
  RawStudy raw = small_raw_study();
  auto path = temp_file("roundtrip.csv");
  write_raw_table(path, raw.universe, raw.scenarios);

  RawStudy loaded = load_raw_table(path);
  CHECK(loaded.universe.params.master_seed == 314);
  CHECK(loaded.universe.params.repetitions == 2);
  CHECK(loaded.scenarios.size() == 2);
  CHECK(loaded.scenarios[0].name == "pair");
  CHECK(loaded.scenarios[1].learners.size() == 3);
  REQUIRE(loaded.universe.datasets.size() == 2);

  for (std::size_t d = 0; d < 2; ++d) {
    const auto& before = raw.universe.datasets[d];
    const auto& after = loaded.universe.datasets[d];
    CHECK(before.dataset == after.dataset);
    CHECK(before.accgain_mean == after.accgain_mean);
    CHECK(before.delta_mean == after.delta_mean);
    for (std::size_t r = 0; r < before.repetitions.size(); ++r) {
      const auto& rb = before.repetitions[r];
      const auto& ra = after.repetitions[r];
      CHECK(rb.flat_choice == ra.flat_choice);
      CHECK(rb.nested_choice == ra.nested_choice);
      CHECK(rb.accgain == ra.accgain);
      CHECK(rb.delta == ra.delta);
      for (std::size_t c = 0; c < rb.cells.size(); ++c) {
        CHECK(rb.cells[c].learner == ra.cells[c].learner);
        CHECK(rb.cells[c].theta == ra.cells[c].theta);
        CHECK(rb.cells[c].flat_estimate == ra.cells[c].flat_estimate);
        CHECK(rb.cells[c].nested_estimate == ra.cells[c].nested_estimate);
        CHECK(rb.cells[c].future_accuracy == ra.cells[c].future_accuracy);
      }
    }
  }

  auto path2 = temp_file("roundtrip2.csv");
  write_raw_table(path2, loaded.universe, loaded.scenarios);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("report statistics are recomputable from the raw table") {
  RawStudy raw = small_raw_study();
  auto path = temp_file("consistency.csv");
  write_raw_table(path, raw.universe, raw.scenarios);
  RawStudy loaded = load_raw_table(path);

  ReportOptions options;
  StudyReport direct = build_report(raw, options);
  StudyReport reloaded = build_report(loaded, options);
  REQUIRE(direct.scenarios.size() == reloaded.scenarios.size());
  for (std::size_t i = 0; i < direct.scenarios.size(); ++i) {
    CHECK(direct.scenarios[i].same_choice.rate ==
          reloaded.scenarios[i].same_choice.rate);
    CHECK(direct.scenarios[i].wilcoxon.p_value ==
          reloaded.scenarios[i].wilcoxon.p_value);
    CHECK(direct.scenarios[i].mean_diff == reloaded.scenarios[i].mean_diff);
    CHECK(direct.scenarios[i].ci.lower == reloaded.scenarios[i].ci.lower);
    CHECK(direct.scenarios[i].ci.upper == reloaded.scenarios[i].ci.upper);
  }
  for (std::size_t i = 0; i < direct.nested_ranks.size(); ++i) {
    CHECK(direct.nested_ranks[i].first == reloaded.nested_ranks[i].first);
    CHECK(direct.nested_ranks[i].second == reloaded.nested_ranks[i].second);
  }
}

TEST_CASE("min-size filter keeps exactly the large datasets") {
  RawStudy raw = small_raw_study();
  StudyRecord filtered = filter_min_size(raw.universe, 70);
  REQUIRE(filtered.datasets.size() == 1);
  CHECK(filtered.datasets[0].dataset == "large");

  ReportOptions options;
  options.min_size = 70;
  StudyReport report = build_report(raw, options);
  CHECK(report.n_datasets == 1);
  CHECK(report.low_power);
  // statistics recomputed on the subset: one pair per scenario
  for (const auto& s : report.scenarios) CHECK(s.n_points == 1);

  options.min_size = 10000;
  CHECK_THROWS_AS(build_report(raw, options), IncompleteStudy);
}

TEST_CASE("report file carries summary, rank, and pair sections") {
  RawStudy raw = small_raw_study();
  ReportOptions options;
  options.baseline = "knn";
  auto built = build_report(raw, options);
  for (const auto& s : built.scenarios) {
    CHECK(s.ci.lower <= s.ci.upper);
    CHECK(s.same_choice.rate >= 0.0);
    CHECK(s.same_choice.rate <= 1.0);
    CHECK(s.wilcoxon.p_value >= 0.0);
    CHECK(s.wilcoxon.p_value <= 1.0);
  }
  auto report_path = temp_file("report.txt");
  write_report(report_path, built);
  std::string text = slurp(report_path);
  CHECK(text.find("# [summary]") != std::string::npos);
  CHECK(text.find("# [baseline]") != std::string::npos);
  CHECK(text.find("# [mean_ranks_nested]") != std::string::npos);
  CHECK(text.find("# [mean_ranks_flat]") != std::string::npos);
  CHECK(text.find("# [pairs]") != std::string::npos);
  CHECK(text.find("pair,") != std::string::npos);
  CHECK(text.find("full,") != std::string::npos);
  CHECK(text.find("knn") != std::string::npos);
}

TEST_CASE("plot data: per-dataset scatter rows and pooled series") {
  RawStudy raw = small_raw_study();
  auto scatter_path = temp_file("scatter.csv");
  auto pooled_path = temp_file("pooled.csv");
  write_plot_data(scatter_path, pooled_path, raw, raw.scenarios[0]);

  std::ifstream scatter(scatter_path);
  std::string line;
  std::getline(scatter, line);
  CHECK(line == "dataset,abs_accgain,delta");
  std::size_t rows = 0;
  while (std::getline(scatter, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);  // one per dataset

  std::ifstream pooled(pooled_path);
  std::getline(pooled, line);
  CHECK(line == "series,value");
  std::size_t gain_rows = 0, delta_rows = 0;
  while (std::getline(pooled, line)) {
    if (line.rfind("abs_accgain,", 0) == 0) ++gain_rows;
    if (line.rfind("delta,", 0) == 0) ++delta_rows;
  }
  CHECK(gain_rows == 2);
  CHECK(delta_rows == 2);
}

TEST_CASE("loading rejects truncated tables") {
  auto path = temp_file("bad.csv");
  std::ofstream(path) << "not a study\n";
  CHECK_THROWS_AS(load_raw_table(path), IncompleteTable);
}

TEST_CASE("loading rejects tables with missing learner cells") {
  RawStudy raw = small_raw_study();
  auto path = temp_file("complete.csv");
  write_raw_table(path, raw.universe, raw.scenarios);

  // drop one learner row
  std::ifstream in(path);
  std::string line;
  std::vector<std::string> lines;
  bool dropped = false;
  while (std::getline(in, line)) {
    if (!dropped && line.rfind("learner,", 0) == 0) {
      dropped = true;
      continue;
    }
    lines.push_back(line);
  }
  in.close();
  auto holey = temp_file("holey.csv");
  std::ofstream out(holey);
  for (const auto& l : lines) out << l << '\n';
  out.close();
  CHECK_THROWS_AS(load_raw_table(holey), IncompleteTable);
}
