#include <cmath>
#include <numbers>

#include "cvbench/kernels.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

struct GnbImpl final : ModelImpl {
  // per class: log prior, feature means, 1/var, and sum of log(2*pi*var)
  std::array<double, 2> log_prior;
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> inv_var;
  std::array<double, 2> log_norm;

  int classify(const double* z) const override {
    double ll0 = log_prior[0] - 0.5 * (log_norm[0] +
                                       kernels::weighted_sq_dev_sum(
                                           z, mean[0].data(),
                                           inv_var[0].data(), mean[0].size()));
    double ll1 = log_prior[1] - 0.5 * (log_norm[1] +
                                       kernels::weighted_sq_dev_sum(
                                           z, mean[1].data(),
                                           inv_var[1].data(), mean[1].size()));
    return ll1 > ll0 ? 1 : 0;
  }
};

}  // namespace

std::unique_ptr<ModelImpl> train_gnb(const TrainSet& train,
                                     double var_smoothing) {
  std::size_t d = train.d;
  auto impl = std::make_unique<GnbImpl>();

  std::array<std::size_t, 2> count{0, 0};
  for (int y : train.y) ++count[static_cast<std::size_t>(y)];
  for (std::size_t c = 0; c < 2; ++c) {
    impl->log_prior[c] = std::log(static_cast<double>(count[c]) /
                                  static_cast<double>(train.n));
    impl->mean[c].assign(d, 0.0);
    impl->inv_var[c].assign(d, 0.0);
  }

  for (std::size_t i = 0; i < train.n; ++i) {
    const double* r = train.row(i);
    auto c = static_cast<std::size_t>(train.y[i]);
    for (std::size_t j = 0; j < d; ++j) impl->mean[c][j] += r[j];
  }
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t j = 0; j < d; ++j)
      impl->mean[c][j] /= static_cast<double>(count[c]);

  std::array<std::vector<double>, 2> var;
  var[0].assign(d, 0.0);
  var[1].assign(d, 0.0);
  std::vector<double> pooled_mean(d, 0.0), pooled_var(d, 0.0);
  for (std::size_t i = 0; i < train.n; ++i) {
    const double* r = train.row(i);
    for (std::size_t j = 0; j < d; ++j) pooled_mean[j] += r[j];
  }
  for (std::size_t j = 0; j < d; ++j)
    pooled_mean[j] /= static_cast<double>(train.n);
  for (std::size_t i = 0; i < train.n; ++i) {
    const double* r = train.row(i);
    auto c = static_cast<std::size_t>(train.y[i]);
    for (std::size_t j = 0; j < d; ++j) {
      double dc = r[j] - impl->mean[c][j];
      var[c][j] += dc * dc;
      double dp = r[j] - pooled_mean[j];
      pooled_var[j] += dp * dp;
    }
  }
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    max_var = std::max(max_var, pooled_var[j] / static_cast<double>(train.n));
  // smoothing is relative to the largest overall feature variance
  double eps = var_smoothing * (max_var > 0.0 ? max_var : 1.0);

  for (std::size_t c = 0; c < 2; ++c) {
    impl->log_norm[c] = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double v = var[c][j] / static_cast<double>(count[c]) + eps;
      impl->inv_var[c][j] = 1.0 / v;
      impl->log_norm[c] += std::log(2.0 * std::numbers::pi * v);
    }
  }
  return impl;
}

}  // namespace cvbench::detail
