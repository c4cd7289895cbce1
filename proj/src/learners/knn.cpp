#include <algorithm>
#include <array>

#include "cvbench/kernels.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

// Neighbor ties (equal distance) keep the lower training index; vote ties
// resolve to class 0.
struct KnnImpl final : ModelImpl {
  TrainSet train;
  int k;

  int classify(const double* z) const override {
    std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(k),
                                              train.n);
    // (distance, index), kept sorted; k is small so insertion is fine.
    std::array<std::pair<double, std::size_t>, 64> best;
    std::size_t filled = 0;
    for (std::size_t i = 0; i < train.n; ++i) {
      double dist = kernels::squared_l2(z, train.row(i), train.d);
      std::pair<double, std::size_t> cand{dist, i};
      if (filled == k_eff && !(cand < best[filled - 1])) continue;
      std::size_t at = filled < k_eff ? filled : filled - 1;
      while (at > 0 && cand < best[at - 1]) {
        best[at] = best[at - 1];
        --at;
      }
      best[at] = cand;
      if (filled < k_eff) ++filled;
    }
    std::size_t ones = 0;
    for (std::size_t i = 0; i < filled; ++i)
      ones += static_cast<std::size_t>(train.y[best[i].second]);
    return 2 * ones > filled ? 1 : 0;
  }
};

}  // namespace

std::unique_ptr<ModelImpl> train_knn(const TrainSet& train, int k) {
  auto impl = std::make_unique<KnnImpl>();
  impl->train = train;
  impl->k = k;
  return impl;
}

}  // namespace cvbench::detail
