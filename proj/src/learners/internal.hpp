#pragma once
// Shared pieces for the learner implementations. Not installed.

#include <cstdint>
#include <memory>
#include <vector>

#include "cvbench/dataset.hpp"
#include "cvbench/learners.hpp"

namespace cvbench::detail {

// z = (x - shift) * scale, per feature.
struct Scaler {
  std::vector<double> shift;
  std::vector<double> scale;

  void apply(const double* in, double* out, std::size_t d) const;
};

struct ModelImpl {
  std::size_t d = 0;
  Scaler scaler;

  virtual ~ModelImpl() = default;
  // `z` is a standardized feature row of length d.
  virtual int classify(const double* z) const = 0;
};

// Standardized, materialized copy of a training view.
struct TrainSet {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> z;  // row-major
  std::vector<int> y;

  const double* row(std::size_t i) const { return z.data() + i * d; }
};

Scaler fit_scaler(const DataView& view);
TrainSet standardize(const DataView& view, const Scaler& scaler);

std::unique_ptr<ModelImpl> train_knn(const TrainSet& train, int k);
std::unique_ptr<ModelImpl> train_gnb(const TrainSet& train,
                                     double var_smoothing);
std::unique_ptr<ModelImpl> train_proto(const TrainSet& train,
                                       int prototypes_per_class);
std::unique_ptr<ModelImpl> train_rf(const TrainSet& train, int n_trees,
                                    double mtry_fraction, std::uint64_t seed);
std::unique_ptr<ModelImpl> train_gbstump(const TrainSet& train, int rounds,
                                         double learning_rate, int depth,
                                         std::uint64_t seed);
std::unique_ptr<ModelImpl> train_linridge(const TrainSet& train,
                                          double penalty);

}  // namespace cvbench::detail
