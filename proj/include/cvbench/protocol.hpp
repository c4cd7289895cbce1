#pragma once
// The experimental procedure: repeated stratified 50% splits, flat and
// nested estimates per learner on the train half, held-out future accuracy
// with the flat-selected hyperparameters, accuracy gain between the two
// selections, and per-repetition irrelevance thresholds. Includes the
// alternative analyses (average-first, per-repetition), the
// standard-deviation threshold, and the fixed-learner baseline.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cvbench/dataset.hpp"
#include "cvbench/learners.hpp"

namespace cvbench {

struct Scenario {
  std::string name;
  std::vector<std::string> learners;  // ordered candidate set
};

// The configured learner universe (default or config-overridden grids).
struct LearnerSet {
  std::vector<LearnerSpec> specs;

  static LearnerSet builtin(const std::vector<std::string>& ids);
  const LearnerSpec& get(const std::string& id) const;  // UnknownLearner
  bool contains(const std::string& id) const;
};

struct StudyParams {
  int repetitions = 6;
  double split_fraction = 0.5;
  int k_outer = 5;
  int k_inner = 5;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

// Per-learner results on one (dataset, repetition) cell. Scenario-independent:
// seeds derive from (master_seed, dataset, repetition, learner).
struct LearnerCell {
  std::string learner;
  HyperPoint theta;              // flat-selected hyperparameters
  double flat_estimate = 0.0;    // winning fold-mean of the flat pass
  double nested_estimate = 0.0;  // mean outer-fold accuracy
  double future_accuracy = 0.0;  // test-half accuracy, trained on train half
};

struct RepetitionRecord {
  std::string dataset;
  std::size_t n_instances = 0;
  int repetition = 0;
  std::vector<LearnerCell> cells;  // scenario order

  // derived by derive_selection
  std::string flat_choice;
  std::string nested_choice;
  double future_flat = 0.0;
  double future_nested = 0.0;
  double accgain = 0.0;      // future_nested - future_flat
  double delta_flat = 0.0;   // |nested estimate - future accuracy| of flat pick
  double delta_nested = 0.0;
  double delta = 0.0;        // min of the two
};

struct DatasetRecord {
  std::string dataset;
  std::size_t n_instances = 0;
  std::vector<RepetitionRecord> repetitions;
  double accgain_mean = 0.0;
  double delta_mean = 0.0;

  double abs_accgain() const { return std::abs(accgain_mean); }
};

struct StudyRecord {
  Scenario scenario;
  StudyParams params;
  std::vector<DatasetRecord> datasets;
};

// Recomputes choices, future accuracies, accgain, and thresholds from cells.
void derive_selection(RepetitionRecord& record, const Scenario& scenario);

RepetitionRecord run_repetition(const Dataset& data, const Scenario& scenario,
                                const LearnerSet& learners,
                                const StudyParams& params, int repetition);

DatasetRecord aggregate_dataset(std::vector<RepetitionRecord> records,
                                int expected_repetitions);

StudyRecord run_study(const std::vector<Dataset>& datasets,
                      const Scenario& scenario, const LearnerSet& learners,
                      const StudyParams& params);

// Restrict an existing study to a learner subset; cells are reused and the
// per-repetition selections are re-derived. Valid because cells do not
// depend on the scenario.
StudyRecord derive_scenario(const StudyRecord& study, const Scenario& subset);

// Replace the flat selection with a fixed learner everywhere: accgain
// becomes future(nested pick) - future(fixed), the threshold pairs
// delta(nested pick) with delta(fixed), and agreement means the nested pick
// equals the fixed learner. The nested side selects over `scenario`; the
// fixed learner only needs a cell in the study, not scenario membership.
StudyRecord baseline_fixed(const StudyRecord& study, const Scenario& scenario,
                           const std::string& fixed);

enum class Analysis { primary, avg_first, per_repetition };
enum class Threshold { nested_gap, stddev };

struct AnalysisPoint {
  std::string dataset;
  int repetition = -1;  // -1 for per-dataset points
  double abs_gain = 0.0;
  double threshold = 0.0;
};

struct AnalysisOutput {
  std::vector<AnalysisPoint> points;  // Wilcoxon input: (abs_gain, threshold)
  std::vector<std::pair<std::string, std::string>> selections;  // (flat-side, nested)
};

AnalysisOutput analyze(const StudyRecord& study, Analysis analysis,
                       Threshold threshold);

// Smallest across-repetition sample standard deviation of the three
// accuracy series (flat estimate, nested estimate, future accuracy) of one
// learner on one dataset.
double threshold_stddev(const StudyRecord& study, const std::string& learner,
                        const std::string& dataset);

}  // namespace cvbench
