#pragma once
// Classifier abstraction: declared hyperparameter grids, training, and
// accuracy. Six built-in learners: knn, gnb, proto (LVQ-style prototypes),
// rf, gbstump (boosted shallow trees), linridge.
//
// Every learner z-scores features with train-side statistics inside
// train/predict; zero-variance features pass through unscaled. Prediction
// ties (votes, posteriors, margins) resolve to class 0.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cvbench/dataset.hpp"

namespace cvbench {

struct GridAxis {
  std::string name;
  std::vector<double> values;
  bool integer = false;
  double min_value = 0.0;
  double max_value = 0.0;
};

struct LearnerSpec {
  std::string id;
  std::vector<GridAxis> axes;

  std::size_t n_hyperparameters() const { return axes.size(); }
  const GridAxis& axis(std::string_view name) const;
};

struct HyperPoint {
  std::string learner;
  std::vector<double> values;  // aligned with LearnerSpec::axes

  double value(const LearnerSpec& spec, std::string_view axis_name) const;
  bool operator==(const HyperPoint&) const = default;
};

struct HyperGrid {
  std::vector<HyperPoint> points;
};

const std::vector<std::string>& builtin_learner_ids();
bool is_builtin_learner(const std::string& id);

// Throws UnknownLearner for ids outside the built-in suite.
LearnerSpec default_spec(const std::string& id);

// Full cartesian product of the axis value lists, row-major over the
// declared axes (first axis varies slowest).
HyperGrid create_grid(const LearnerSpec& spec);

// "k=5" / "trees=300;mtry_fraction=0.5"; exact round-trip with parse_theta.
std::string format_theta(const LearnerSpec& spec, const HyperPoint& theta);
HyperPoint parse_theta(const LearnerSpec& spec, const std::string& text);

namespace detail {
struct ModelImpl;
}

class TrainedModel {
 public:
  TrainedModel() = default;
  explicit TrainedModel(std::shared_ptr<const detail::ModelImpl> impl);

  bool valid() const { return impl_ != nullptr; }
  std::size_t dim() const;
  std::vector<int> predict(const DataView& view) const;

 private:
  std::shared_ptr<const detail::ModelImpl> impl_;
};

// Deterministic for a fixed seed; knn/gnb/proto/linridge ignore the seed,
// rf/gbstump consume it. Throws SingleClassTrainingSet when only one class
// is present.
TrainedModel train(const LearnerSpec& spec, const DataView& train_data,
                   const HyperPoint& theta, std::uint64_t seed);

// Always predicts `label`; stand-in for degenerate training sets inside
// cross-validation loops.
TrainedModel constant_model(int label, std::size_t dim);

double accuracy(const TrainedModel& model, const DataView& test_data);

}  // namespace cvbench
