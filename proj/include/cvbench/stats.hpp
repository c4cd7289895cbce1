#pragma once
// Nonparametric machinery: one-sided Wilcoxon signed-rank test (exact via
// subset-sum counting up to n=25, tie-corrected normal approximation with
// continuity correction beyond), percentile bootstrap CI of the mean, mean
// ranks, and agreement rates.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cvbench {

struct PairedSample {
  std::vector<std::pair<double, double>> pairs;  // (x, y)
};

struct TestResult {
  double p_value = 1.0;
  double statistic = 0.0;     // W+ = rank sum of positive differences
  std::size_t n_effective = 0;  // after dropping zero differences
  std::string method;           // "exact" or "normal-approximation"
};

// Tests the one-sided alternative x < y on differences d = x - y. Zero
// differences are dropped; tied |d| receive average ranks; with every
// difference zero the result is p = 1.
TestResult wilcoxon_one_sided(const PairedSample& sample);

struct IntervalEstimate {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t resamples = 0;
};

IntervalEstimate bootstrap_ci_mean(const std::vector<double>& values,
                                   std::size_t b = 5000, double level = 0.95,
                                   std::uint64_t seed = 0);

// Within each cell rank 1 is the highest value, ties get average ranks; the
// result maps each learner to its mean rank over all cells, in input order.
// Every cell must provide one value per learner.
std::vector<std::pair<std::string, double>> mean_ranks(
    const std::vector<std::string>& learners,
    const std::vector<std::vector<double>>& cells);

struct ChoiceRate {
  double rate = 0.0;
  double random_baseline = 0.0;  // 1 / candidate count
  std::size_t n = 0;
};

ChoiceRate same_choice_rate(
    const std::vector<std::pair<std::string, std::string>>& selections,
    std::size_t candidate_count);

}  // namespace cvbench
