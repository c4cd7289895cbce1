#include "cvbench/split.hpp"

#include <algorithm>
#include <set>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvbench;

namespace {

Dataset labels_only(const std::string& name, std::size_t n0, std::size_t n1) {
  std::vector<double> x;
  std::vector<int> y;
  for (std::size_t i = 0; i < n0 + n1; ++i) {
    x.push_back(static_cast<double>(i));
    y.push_back(i < n0 ? 0 : 1);
  }
  return make_dataset(name, n0 + n1, 1, std::move(x), std::move(y));
}

std::array<std::size_t, 2> side_counts(const DataView& view,
                                       const std::vector<std::size_t>& side) {
  std::array<std::size_t, 2> c{0, 0};
  for (auto pos : side) ++c[static_cast<std::size_t>(view.label(pos))];
  return c;
}

}  // namespace

TEST_CASE("holdout: forced proportions on a 6/4 dataset") {
  Dataset d = labels_only("h", 6, 4);
  DataView view(d);
  auto split = stratified_holdout(view, 0.5, 11);
  CHECK(side_counts(view, split.train) == std::array<std::size_t, 2>{3, 2});
  CHECK(side_counts(view, split.test) == std::array<std::size_t, 2>{3, 2});
}

TEST_CASE("holdout: deterministic for a fixed seed") {
  Dataset d = labels_only("h2", 5, 5);
  DataView view(d);
  auto a = stratified_holdout(view, 0.5, 3);
  auto b = stratified_holdout(view, 0.5, 3);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  auto c = stratified_holdout(view, 0.5, 4);
  CHECK(a.train != c.train);  // overwhelmingly likely for 5/5
}

TEST_CASE("holdout: a 3-instance class splits 2/1 or 1/2, never 0") {
  Dataset d = labels_only("h3", 3, 5);
  DataView view(d);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto split = stratified_holdout(view, 0.5, seed);
    auto train = side_counts(view, split.train)[0];
    auto test = side_counts(view, split.test)[0];
    CHECK(train + test == 3);
    CHECK(train >= 1);
    CHECK(test >= 1);
  }
}

TEST_CASE("holdout: degenerate splits are refused") {
  Dataset one = labels_only("d1", 1, 8);
  CHECK_THROWS_AS(stratified_holdout(DataView(one), 0.5, 1), DegenerateSplit);
  Dataset two = labels_only("d2", 2, 8);
  CHECK_THROWS_AS(stratified_holdout(DataView(two), 0.9, 1), DegenerateSplit);
}

TEST_CASE("kfold: 5/5 instances over 5 folds puts one of each class per fold") {
  Dataset d = labels_only("k", 5, 5);
  DataView view(d);
  auto plan = stratified_kfold(view, 5, 17);
  for (int f = 0; f < 5; ++f) {
    auto test = plan.test_positions(f);
    CHECK(test.size() == 2);
    CHECK(side_counts(view, test) == std::array<std::size_t, 2>{1, 1});
  }
}

TEST_CASE("kfold: partition and stratification on an 8/3 dataset") {
  Dataset d = labels_only("k2", 8, 3);
  DataView view(d);
  auto plan = stratified_kfold(view, 5, 23);

  std::set<std::size_t> seen;
  for (int f = 0; f < 5; ++f)
    for (auto pos : plan.test_positions(f)) CHECK(seen.insert(pos).second);
  CHECK(seen.size() == 11);

  for (std::size_t c = 0; c < 2; ++c) {
    std::size_t lo = 99, hi = 0;
    for (int f = 0; f < 5; ++f) {
      auto counts = side_counts(view, plan.test_positions(f));
      lo = std::min(lo, counts[c]);
      hi = std::max(hi, counts[c]);
    }
    CHECK(hi - lo <= 1);
  }
}

TEST_CASE("kfold: train/test pairs reconstruct the full index set") {
  Dataset d = labels_only("k3", 7, 6);
  DataView view(d);
  auto plan = stratified_kfold(view, 4, 5);
  for (int f = 0; f < 4; ++f) {
    auto train = plan.train_positions(f);
    auto test = plan.test_positions(f);
    CHECK(train.size() + test.size() == 13);
    std::set<std::size_t> all(train.begin(), train.end());
    all.insert(test.begin(), test.end());
    CHECK(all.size() == 13);
  }
}

TEST_CASE("kfold: too few instances") {
  Dataset d = labels_only("k4", 2, 1);
  CHECK_THROWS_AS(stratified_kfold(DataView(d), 5, 1), TooFewInstances);
}

TEST_CASE("subsample: no-op below the cap, stratified above it") {
  Dataset small = labels_only("s", 4, 4);
  Dataset same = subsample(small, 5000, 1);
  CHECK(same.features == small.features);
  CHECK(same.labels == small.labels);

  Dataset big = cvtest::noise_dataset("sb", 1000, 3, 9);
  // classes are 500/500; force a 60/40 imbalance
  for (std::size_t i = 0; i < 100; ++i) big.labels[500 + i] = 0;
  Dataset cut = subsample(big, 100, 2);
  CHECK(cut.n_instances == 100);
  auto counts = cut.class_counts();
  CHECK(counts[0] >= 59);
  CHECK(counts[0] <= 61);

  Dataset again = subsample(cut, 100, 2);
  CHECK(again.features == cut.features);
  CHECK(again.labels == cut.labels);
}
