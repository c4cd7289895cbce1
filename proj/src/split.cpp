#include "cvbench/split.hpp"

#include <algorithm>
#include <cmath>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

namespace {

// Positions of each class, in view order.
std::array<std::vector<std::size_t>, 2> class_positions(const DataView& view) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < view.size(); ++i)
    by_class[static_cast<std::size_t>(view.label(i))].push_back(i);
  return by_class;
}

// Largest-remainder apportionment of `total` slots across class counts,
// proportional to count[c] / n. Guarantees |alloc[c] - exact[c]| < 1.
std::array<std::size_t, 2> apportion(const std::array<std::size_t, 2>& counts,
                                     std::size_t total, std::size_t n) {
  std::array<std::size_t, 2> alloc{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    double exact =
        static_cast<double>(total) * static_cast<double>(counts[c]) /
        static_cast<double>(n);
    alloc[c] = static_cast<std::size_t>(std::floor(exact));
    alloc[c] = std::min(alloc[c], counts[c]);
    remainder[c] = exact - static_cast<double>(alloc[c]);
    assigned += alloc[c];
  }
  while (assigned < total) {
    std::size_t pick = remainder[0] >= remainder[1] ? 0 : 1;
    if (alloc[pick] >= counts[pick]) pick = 1 - pick;
    ++alloc[pick];
    remainder[pick] -= 1.0;
    ++assigned;
  }
  return alloc;
}

}  // namespace

std::vector<std::size_t> FoldPlan::test_positions(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::train_positions(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold) out.push_back(i);
  return out;
}

SplitPair stratified_holdout(const DataView& view, double fraction,
                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw Error("holdout fraction must be in (0,1)");
  auto by_class = class_positions(view);
  auto counts = view.class_counts();
  for (std::size_t c = 0; c < 2; ++c)
    if (counts[c] < 2)
      throw DegenerateSplit("class " + std::to_string(c) +
                            " has fewer than 2 instances");

  std::size_t n = view.size();
  auto train_total = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  auto train_counts = apportion(counts, train_total, n);
  for (std::size_t c = 0; c < 2; ++c)
    if (train_counts[c] == 0 || train_counts[c] == counts[c])
      throw DegenerateSplit("class " + std::to_string(c) +
                            " would be empty on one side of the split");

  SplitPair out;
  for (std::size_t c = 0; c < 2; ++c) {
    SplitMix64 rng(hash64(seed, "holdout-class", c));
    auto positions = by_class[c];
    fisher_yates(positions, rng);
    for (std::size_t i = 0; i < positions.size(); ++i)
      (i < train_counts[c] ? out.train : out.test).push_back(positions[i]);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

FoldPlan stratified_kfold(const DataView& view, int k, std::uint64_t seed) {
  if (k < 2) throw Error("fold count must be at least 2");
  if (view.size() < static_cast<std::size_t>(k))
    throw TooFewInstances("need at least " + std::to_string(k) +
                          " instances for " + std::to_string(k) + " folds");

  FoldPlan plan;
  plan.k = k;
  plan.assignment.assign(view.size(), -1);
  auto by_class = class_positions(view);
  for (std::size_t c = 0; c < 2; ++c) {
    SplitMix64 rng(hash64(seed, "kfold-class", c));
    auto positions = by_class[c];
    fisher_yates(positions, rng);
    // Deal consecutively from a per-class starting fold so fold sizes stay
    // balanced overall, not just within each class.
    auto offset = static_cast<int>(
        SplitMix64(hash64(seed, "kfold-offset", c)).next_below(
            static_cast<std::uint64_t>(k)));
    for (std::size_t j = 0; j < positions.size(); ++j)
      plan.assignment[positions[j]] =
          static_cast<int>((offset + static_cast<int>(j % k)) % k);
  }
  return plan;
}

Dataset subsample(const Dataset& data, std::size_t cap, std::uint64_t seed) {
  if (data.n_instances <= cap) return data;

  DataView view(data);
  auto counts = view.class_counts();
  auto keep = apportion(counts, cap, data.n_instances);
  for (std::size_t c = 0; c < 2; ++c)
    if (keep[c] < 2)
      throw Error("subsample cap " + std::to_string(cap) +
                  " leaves class " + std::to_string(c) +
                  " with fewer than 2 instances");

  auto by_class = class_positions(view);
  std::vector<std::size_t> chosen;
  chosen.reserve(cap);
  for (std::size_t c = 0; c < 2; ++c) {
    SplitMix64 rng(hash64(seed, "subsample-class", c));
    auto positions = by_class[c];
    fisher_yates(positions, rng);
    chosen.insert(chosen.end(), positions.begin(),
                  positions.begin() + static_cast<std::ptrdiff_t>(keep[c]));
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<double> features;
  features.reserve(chosen.size() * data.n_features);
  std::vector<int> labels;
  labels.reserve(chosen.size());
  for (std::size_t i : chosen) {
    const double* r = data.row(i);
    features.insert(features.end(), r, r + data.n_features);
    labels.push_back(data.labels[i]);
  }
  return make_dataset(data.name, chosen.size(), data.n_features,
                      std::move(features), std::move(labels));
}

}  // namespace cvbench
