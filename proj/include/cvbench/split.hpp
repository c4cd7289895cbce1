#pragma once
// Stratified holdout splits, stratified k-fold plans, and size-capped
// subsampling. All index lists are positions relative to the input view and
// are emitted in ascending order, so downstream code is independent of
// shuffle internals.

#include <cstdint>
#include <vector>

#include "cvbench/dataset.hpp"

namespace cvbench {

struct SplitPair {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

struct FoldPlan {
  int k = 0;
  std::vector<int> assignment;  // per-position fold id in [0, k)

  std::vector<std::size_t> test_positions(int fold) const;
  std::vector<std::size_t> train_positions(int fold) const;
};

// Per class: train share = largest-remainder rounding of fraction * count,
// corrected so the overall train size equals round(fraction * n).
SplitPair stratified_holdout(const DataView& view, double fraction,
                             std::uint64_t seed);

FoldPlan stratified_kfold(const DataView& view, int k, std::uint64_t seed);

// Returns the dataset unchanged when n <= cap, otherwise a stratified random
// subset of size cap.
Dataset subsample(const Dataset& data, std::size_t cap, std::uint64_t seed);

}  // namespace cvbench
