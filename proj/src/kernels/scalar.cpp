// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against.

#include "cvbench/kernels.hpp"

namespace cvbench::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_l2_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double weighted_sq_dev_sum_scalar(const double* x, const double* mu,
                                  const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - mu[i];
    acc += w[i] * d * d;
  }
  return acc;
}

void scale_shift_scalar(const double* x, const double* shift,
                        const double* scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - shift[i]) * scale[i];
}

void add_scaled_scalar(double* y, const double* x, double alpha,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lerp_toward_scalar(double* p, const double* x, double alpha,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] += alpha * (x[i] - p[i]);
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",           dot_scalar,         squared_l2_scalar,
      sum_scalar,         weighted_sq_dev_sum_scalar,
      scale_shift_scalar, add_scaled_scalar,  lerp_toward_scalar,
  };
  return backend;
}

}  // namespace cvbench::kernels
