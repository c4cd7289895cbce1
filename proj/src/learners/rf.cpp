// Random forest: bagged CART trees, axis-aligned splits chosen by Gini
// impurity over a per-node random feature subset.

#include <algorithm>
#include <cmath>

#include "cvbench/rng.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

constexpr int kMaxDepth = 32;

struct Node {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
};

struct Tree {
  std::vector<Node> nodes;

  int predict(const double* z) const {
    int at = 0;
    while (nodes[at].feature >= 0)
      at = z[nodes[at].feature] < nodes[at].threshold ? nodes[at].left
                                                      : nodes[at].right;
    return nodes[at].label;
  }
};

struct TreeBuilder {
  const TrainSet& train;
  std::size_t mtry;
  SplitMix64& rng;
  Tree tree;
  std::vector<int> feature_pool;
  std::vector<std::pair<double, int>> sorted;  // (value, label) scratch

  TreeBuilder(const TrainSet& t, std::size_t m, SplitMix64& r)
      : train(t), mtry(m), rng(r) {}

  int make_leaf(std::size_t ones, std::size_t n) {
    Node leaf;
    leaf.label = 2 * ones > n ? 1 : 0;
    tree.nodes.push_back(leaf);
    return static_cast<int>(tree.nodes.size() - 1);
  }

  // rows are indices into train (duplicates allowed via bootstrap)
  int build(std::vector<std::size_t>& rows, int depth) {
    std::size_t n = rows.size();
    std::size_t ones = 0;
    for (std::size_t i : rows) ones += static_cast<std::size_t>(train.y[i]);
    if (ones == 0 || ones == n || n < 2 || depth >= kMaxDepth)
      return make_leaf(ones, n);

    feature_pool.resize(train.d);
    for (std::size_t j = 0; j < train.d; ++j)
      feature_pool[j] = static_cast<int>(j);
    for (std::size_t j = 0; j < mtry; ++j) {
      std::size_t pick = j + rng.next_below(train.d - j);
      std::swap(feature_pool[j], feature_pool[pick]);
    }

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    for (std::size_t fi = 0; fi < mtry; ++fi) {
      int f = feature_pool[fi];
      sorted.clear();
      for (std::size_t i : rows) sorted.emplace_back(train.row(i)[f], train.y[i]);
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t left_n = 0, left_ones = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_n;
        left_ones += static_cast<std::size_t>(sorted[i].second);
        if (!(sorted[i].first < sorted[i + 1].first)) continue;
        std::size_t right_n = n - left_n;
        std::size_t right_ones = ones - left_ones;
        auto gini = [](std::size_t cnt, std::size_t one) {
          double p = static_cast<double>(one) / static_cast<double>(cnt);
          return 2.0 * p * (1.0 - p);
        };
        double impurity =
            (static_cast<double>(left_n) * gini(left_n, left_ones) +
             static_cast<double>(right_n) * gini(right_n, right_ones)) /
            static_cast<double>(n);
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return make_leaf(ones, n);  // all sampled features constant

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t i : rows)
      (train.row(i)[best_feature] < best_threshold ? left_rows : right_rows)
          .push_back(i);
    if (left_rows.empty() || right_rows.empty()) return make_leaf(ones, n);

    Node split;
    split.feature = best_feature;
    split.threshold = best_threshold;
    tree.nodes.push_back(split);
    auto at = static_cast<int>(tree.nodes.size() - 1);
    tree.nodes[at].left = build(left_rows, depth + 1);
    int right = build(right_rows, depth + 1);
    tree.nodes[at].right = right;
    return at;
  }
};

struct RfImpl final : ModelImpl {
  std::vector<Tree> trees;

  int classify(const double* z) const override {
    std::size_t ones = 0;
    for (const auto& t : trees)
      ones += static_cast<std::size_t>(t.predict(z));
    return 2 * ones > trees.size() ? 1 : 0;
  }
};

}  // namespace

std::unique_ptr<ModelImpl> train_rf(const TrainSet& train, int n_trees,
                                    double mtry_fraction, std::uint64_t seed) {
  auto mtry = static_cast<std::size_t>(
      std::llround(mtry_fraction * static_cast<double>(train.d)));
  mtry = std::clamp<std::size_t>(mtry, 1, train.d);

  auto impl = std::make_unique<RfImpl>();
  impl->trees.reserve(static_cast<std::size_t>(n_trees));
  for (int t = 0; t < n_trees; ++t) {
    SplitMix64 rng(hash64(seed, "tree", t));
    std::vector<std::size_t> rows(train.n);
    for (auto& r : rows) r = rng.next_below(train.n);  // bootstrap resample
    TreeBuilder builder(train, mtry, rng);
    builder.build(rows, 0);
    impl->trees.push_back(std::move(builder.tree));
  }
  return impl;
}

}  // namespace cvbench::detail
