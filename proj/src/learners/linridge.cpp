// Ridge-regularized least-squares classifier on +/-1 targets. Features are
// standardized (so near-zero column means); the intercept is the target mean
// and stays unpenalized.

#include <cmath>

#include "cvbench/errors.hpp"
#include "cvbench/kernels.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

struct LinridgeImpl final : ModelImpl {
  std::vector<double> weights;
  double intercept = 0.0;

  int classify(const double* z) const override {
    double s = kernels::dot(weights.data(), z, weights.size()) + intercept;
    return s > 0.0 ? 1 : 0;
  }
};

// In-place Cholesky solve of (A + lambda*I) x = b for symmetric A.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b,
                              std::size_t d, double lambda) {
  for (std::size_t j = 0; j < d; ++j) a[j * d + j] += lambda;
  // decompose: a = L L^T, L stored in the lower triangle
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
    if (diag <= 0.0) throw Error("ridge system is not positive definite");
    diag = std::sqrt(diag);
    a[j * d + j] = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
      a[i * d + j] = v / diag;
    }
  }
  // forward then back substitution
  for (std::size_t i = 0; i < d; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * d + k] * b[k];
    b[i] = v / a[i * d + i];
  }
  for (std::size_t i = d; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < d; ++k) v -= a[k * d + i] * b[k];
    b[i] = v / a[i * d + i];
  }
  return b;
}

}  // namespace

std::unique_ptr<ModelImpl> train_linridge(const TrainSet& train,
                                          double penalty) {
  std::size_t d = train.d;
  std::size_t n = train.n;

  std::vector<double> targets(n);
  double target_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = train.y[i] == 1 ? 1.0 : -1.0;
    target_mean += targets[i];
  }
  target_mean /= static_cast<double>(n);

  // gram = Z^T Z, rhs = Z^T (y - mean), accumulated one row at a time
  std::vector<double> gram(d * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* z = train.row(i);
    for (std::size_t j = 0; j < d; ++j)
      kernels::add_scaled(gram.data() + j * d, z, z[j], d);
    kernels::add_scaled(rhs.data(), z, targets[i] - target_mean, d);
  }

  auto impl = std::make_unique<LinridgeImpl>();
  impl->weights = solve_spd(std::move(gram), std::move(rhs), d, penalty);
  impl->intercept = target_mean;
  return impl;
}

}  // namespace cvbench::detail
