#include "cvbench/selection.hpp"

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"
#include "cvbench/split.hpp"

namespace cvbench {

namespace {

// Train on `train` and score on `test`. A single-class training side falls
// back to the majority-class constant model instead of failing; with
// stratified folds this is only reachable when a class has one instance.
double train_and_score(const LearnerSpec& spec, const HyperPoint& theta,
                       const DataView& train_view, const DataView& test_view,
                       std::uint64_t model_seed) {
  auto counts = train_view.class_counts();
  if (train_view.size() == 0)
    throw SingleClassTrainingSet("empty training fold");
  if (counts[0] == 0 || counts[1] == 0) {
    int majority = counts[1] > counts[0] ? 1 : 0;
    return accuracy(constant_model(majority, train_view.dim()), test_view);
  }
  return accuracy(train(spec, train_view, theta, model_seed), test_view);
}

// Seed for the model trained on the training side of `fold` with grid point
// `theta_index`; shared between the flat pass and the nested outer pass.
std::uint64_t fold_model_seed(std::uint64_t cv_seed, int fold,
                              std::size_t theta_index) {
  return hash64(cv_seed, "fold", fold, "theta", theta_index);
}

// Fold-mean accuracy for every grid point, folds evaluated in plan order.
std::vector<double> grid_fold_means(const LearnerSpec& spec,
                                    const HyperGrid& grid,
                                    const DataView& data, const FoldPlan& plan,
                                    std::uint64_t cv_seed) {
  std::vector<DataView> train_views;
  std::vector<DataView> test_views;
  train_views.reserve(static_cast<std::size_t>(plan.k));
  test_views.reserve(static_cast<std::size_t>(plan.k));
  for (int f = 0; f < plan.k; ++f) {
    train_views.push_back(data.select(plan.train_positions(f)));
    test_views.push_back(data.select(plan.test_positions(f)));
  }

  std::vector<double> means(grid.points.size(), 0.0);
  for (std::size_t t = 0; t < grid.points.size(); ++t) {
    double acc = 0.0;
    for (int f = 0; f < plan.k; ++f)
      acc += train_and_score(spec, grid.points[t], train_views[f],
                             test_views[f], fold_model_seed(cv_seed, f, t));
    means[t] = acc / static_cast<double>(plan.k);
  }
  return means;
}

std::size_t argmax_first(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

}  // namespace

FlatResult flat_cv(const LearnerSpec& spec, const DataView& data, int k,
                   std::uint64_t seed) {
  HyperGrid grid = create_grid(spec);
  FoldPlan plan = stratified_kfold(data, k, hash64(seed, "cv-folds"));

  FlatResult out;
  out.learner = spec.id;
  out.theta_means = grid_fold_means(spec, grid, data, plan, seed);
  out.best_index = argmax_first(out.theta_means);
  out.best_theta = grid.points[out.best_index];
  out.estimate = out.theta_means[out.best_index];
  return out;
}

NestedResult nested_cv(const LearnerSpec& spec, const DataView& data,
                       int k_outer, int k_inner, std::uint64_t seed) {
  HyperGrid grid = create_grid(spec);
  // Same derivation as flat_cv: identical (data, k, seed) share outer folds.
  FoldPlan plan = stratified_kfold(data, k_outer, hash64(seed, "cv-folds"));

  NestedResult out;
  out.learner = spec.id;
  double total = 0.0;
  for (int f = 0; f < plan.k; ++f) {
    DataView outer_train = data.select(plan.train_positions(f));
    DataView outer_test = data.select(plan.test_positions(f));

    std::uint64_t inner_seed = hash64(seed, "inner", f);
    FoldPlan inner_plan =
        stratified_kfold(outer_train, k_inner, hash64(inner_seed, "cv-folds"));
    std::vector<double> inner_means =
        grid_fold_means(spec, grid, outer_train, inner_plan, inner_seed);
    std::size_t chosen = argmax_first(inner_means);

    double fold_acc =
        train_and_score(spec, grid.points[chosen], outer_train, outer_test,
                        fold_model_seed(seed, f, chosen));
    out.fold_thetas.push_back(grid.points[chosen]);
    out.fold_accuracies.push_back(fold_acc);
    total += fold_acc;
  }
  out.estimate = total / static_cast<double>(plan.k);
  return out;
}

std::string select_algorithm(
    const std::vector<std::pair<std::string, double>>& estimates) {
  if (estimates.empty()) throw EmptyCandidateSet("no candidates to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < estimates.size(); ++i)
    if (estimates[i].second > estimates[best].second) best = i;
  return estimates[best].first;
}

}  // namespace cvbench
