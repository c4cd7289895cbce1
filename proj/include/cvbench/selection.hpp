#pragma once
// The two model-selection estimators: flat CV (one pass tunes the grid and
// reports the winning fold-mean) and nested CV (outer folds score
// "fit with inner-CV tuning"). Both share the same outer FoldPlan for the
// same (data, k, seed), and a model trained for (fold, theta) uses the same
// derived seed in either procedure.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cvbench/dataset.hpp"
#include "cvbench/learners.hpp"

namespace cvbench {

struct FlatResult {
  std::string learner;
  HyperPoint best_theta;
  std::size_t best_index = 0;  // position in grid order
  double estimate = 0.0;       // fold-mean accuracy of best_theta
  std::vector<double> theta_means;  // diagnostics, one per grid point
};

struct NestedResult {
  std::string learner;
  double estimate = 0.0;  // mean of the outer-fold accuracies
  std::vector<HyperPoint> fold_thetas;
  std::vector<double> fold_accuracies;
};

FlatResult flat_cv(const LearnerSpec& spec, const DataView& data, int k,
                   std::uint64_t seed);

NestedResult nested_cv(const LearnerSpec& spec, const DataView& data,
                       int k_outer, int k_inner, std::uint64_t seed);

// Argmax by estimate; ties resolve to the earliest candidate.
std::string select_algorithm(
    const std::vector<std::pair<std::string, double>>& estimates);

}  // namespace cvbench
