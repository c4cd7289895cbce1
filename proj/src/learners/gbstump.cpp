// Gradient boosting with depth-limited regression trees on logistic
// gradients. Each round fits a tree to the residuals of a random half of the
// rows (this is where the seed enters) and applies a per-leaf Newton step.

#include <algorithm>
#include <cmath>

#include "cvbench/rng.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

struct RegNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct RegTree {
  std::vector<RegNode> nodes;

  int leaf_for(const double* z) const {
    int at = 0;
    while (nodes[at].feature >= 0)
      at = z[nodes[at].feature] < nodes[at].threshold ? nodes[at].left
                                                      : nodes[at].right;
    return at;
  }
  double predict(const double* z) const { return nodes[leaf_for(z)].value; }
};

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

struct RegTreeBuilder {
  const TrainSet& train;
  const std::vector<double>& residual;
  int max_depth;
  RegTree tree;
  std::vector<std::pair<double, double>> sorted;  // (value, residual) scratch

  RegTreeBuilder(const TrainSet& t, const std::vector<double>& r, int depth)
      : train(t), residual(r), max_depth(depth) {}

  int make_leaf() {
    tree.nodes.emplace_back();
    return static_cast<int>(tree.nodes.size() - 1);
  }

  int build(std::vector<std::size_t>& rows, int depth) {
    std::size_t n = rows.size();
    if (depth >= max_depth || n < 2) return make_leaf();

    double total = 0.0;
    for (std::size_t i : rows) total += residual[i];

    // maximize sum_l^2/n_l + sum_r^2/n_r (equivalent to minimizing SSE)
    double base = total * total / static_cast<double>(n);
    double best_score = base + 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    for (std::size_t f = 0; f < train.d; ++f) {
      sorted.clear();
      for (std::size_t i : rows)
        sorted.emplace_back(train.row(i)[f], residual[i]);
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += sorted[i].second;
        if (!(sorted[i].first < sorted[i + 1].first)) continue;
        auto left_n = static_cast<double>(i + 1);
        auto right_n = static_cast<double>(n - i - 1);
        double right_sum = total - left_sum;
        double score =
            left_sum * left_sum / left_n + right_sum * right_sum / right_n;
        if (score > best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return make_leaf();

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t i : rows)
      (train.row(i)[best_feature] < best_threshold ? left_rows : right_rows)
          .push_back(i);
    if (left_rows.empty() || right_rows.empty()) return make_leaf();

    RegNode split;
    split.feature = best_feature;
    split.threshold = best_threshold;
    tree.nodes.push_back(split);
    auto at = static_cast<int>(tree.nodes.size() - 1);
    int left = build(left_rows, depth + 1);
    tree.nodes[at].left = left;
    int right = build(right_rows, depth + 1);
    tree.nodes[at].right = right;
    return at;
  }
};

struct GbImpl final : ModelImpl {
  double f0 = 0.0;
  double learning_rate = 0.0;
  std::vector<RegTree> trees;

  int classify(const double* z) const override {
    double score = 0.0;
    for (const auto& t : trees) score += t.predict(z);
    score = f0 + learning_rate * score;
    return score > 0.0 ? 1 : 0;
  }
};

}  // namespace

std::unique_ptr<ModelImpl> train_gbstump(const TrainSet& train, int rounds,
                                         double learning_rate, int depth,
                                         std::uint64_t seed) {
  std::size_t n = train.n;
  auto impl = std::make_unique<GbImpl>();
  impl->learning_rate = learning_rate;

  std::size_t ones = 0;
  for (int y : train.y) ones += static_cast<std::size_t>(y);
  double p1 = std::clamp(static_cast<double>(ones) / static_cast<double>(n),
                         1e-6, 1.0 - 1e-6);
  impl->f0 = std::log(p1 / (1.0 - p1));

  std::vector<double> score(n, impl->f0);
  std::vector<double> residual(n, 0.0);
  std::size_t bag = std::max<std::size_t>(1, n / 2);
  std::vector<std::size_t> order(n);

  for (int m = 0; m < rounds; ++m) {
    SplitMix64 rng(hash64(seed, "round", m));
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < bag; ++i) {
      std::size_t pick = i + rng.next_below(n - i);
      std::swap(order[i], order[pick]);
    }
    std::vector<std::size_t> rows(order.begin(),
                                  order.begin() + static_cast<std::ptrdiff_t>(bag));

    for (std::size_t i : rows)
      residual[i] = static_cast<double>(train.y[i]) - sigmoid(score[i]);

    RegTreeBuilder builder(train, residual, depth);
    builder.build(rows, 0);
    RegTree tree = std::move(builder.tree);

    // Newton step per leaf over the bagged rows: sum(residual) / sum(p(1-p))
    std::vector<double> num(tree.nodes.size(), 0.0);
    std::vector<double> den(tree.nodes.size(), 0.0);
    for (std::size_t i : rows) {
      int leaf = tree.leaf_for(train.row(i));
      double p = sigmoid(score[i]);
      num[static_cast<std::size_t>(leaf)] += residual[i];
      den[static_cast<std::size_t>(leaf)] += p * (1.0 - p);
    }
    for (std::size_t l = 0; l < tree.nodes.size(); ++l)
      if (tree.nodes[l].feature < 0 && den[l] > 0.0)
        tree.nodes[l].value = num[l] / (den[l] + 1e-12);

    for (std::size_t i = 0; i < n; ++i)
      score[i] += learning_rate * tree.predict(train.row(i));
    impl->trees.push_back(std::move(tree));
  }
  return impl;
}

}  // namespace cvbench::detail
